use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnindex")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_of_a2() {
    let out = run(&["roots", "--group", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("6 roots"));
    let v = json(&["roots", "--group", "A2", "--json"]);
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn retract_a2() {
    let v = json(&["retract", "--group", "A2", "--lambda", "1,-1", "--json"]);
    assert_eq!(v["result"]["mu"]["pairings"], serde_json::json!(["1/2", "0"]));
    assert_eq!(v["result"]["support"], serde_json::json!([2]));
}

#[test]
fn check_cover_is_clean_and_deterministic() {
    let args = ["check-cover", "--group", "A2", "--genus", "2", "--theta", "2,2", "--samples", "500", "--seed", "7", "--json"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["result"]["failures"].as_array().unwrap().len(), 0);
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn constants_and_classify() {
    let v = json(&["constants", "--group", "C2", "--genus", "2", "--preset", "symplectic-char2", "--json"]);
    assert!(v["result"]["c_prime"].is_array());
    let v = json(&["classify", "--group", "A2", "--kind", "down", "--point", "1,1", "--seed", "1", "--json"]);
    assert_eq!(v["result"]["classification"]["class"], "open");
    let v = json(&["enumerate", "--group", "A2", "--theta", "2,2", "--json"]);
    assert!(!v["result"]["candidates"].as_array().unwrap().is_empty());
}

#[test]
fn errors_have_exit_codes_and_empty_stdout() {
    for (args, code) in [
        (&["retract", "--group", "Q9", "--lambda", "1"][..], 2),
        (&["retract", "--group", "A2"][..], 2),
        (&["frobnicate"][..], 2),
        (&["retract", "--group", "A2", "--lambda", "1,-1,3"][..], 1),
        (&["check-cover", "--group", "A2", "--genus", "2", "--theta", "2,2", "--json"][..], 2),
        (&["stratify", "--group", "A2", "--lambda", "1,-1"][..], 1),
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
