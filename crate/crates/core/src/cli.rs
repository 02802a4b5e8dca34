//! Command-line front end. `run` never panics on bad input; it maps
//! outcomes to exit codes and only writes to `out` once a result exists.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::langlands::{retract, retract_shifted};
use crate::posettop::{classify_cone, classify_finite, FinitePoset, SetDescription};
use crate::rational::format_rational;
use crate::rootdata::{Coweight, GroupData, NodeSet};
use crate::sampling::{rng_from_seed, Sampler};
use crate::strata::{
    check_theorem_cover, covering_set, enumerate_candidates, eta_stratum, hn_parabolic, CoverOptions,
};
use crate::vanishing::{canonical_levi, minimal_constants, StrangenessTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COVER_FAILURES: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hnindex", version, about = "Coweight combinatorics of Harder-Narasimhan strata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Group spec, e.g. `A2`, `B2xG2 ad`, `A1+Z1`.
    #[arg(long)]
    group: String,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the roots.
    Roots {
        #[command(flatten)]
        common: Common,
    },
    /// Langlands retraction of a coweight (shifted by `--eta` if given).
    Retract {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// HN parabolic, eta-stratum and (with `--genus`) the covering set of a dominant coweight.
    Stratify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
        /// Levi nodes (1-based) for the canonical sub-Levi of lambda.
        #[arg(long)]
        gamma_m: Option<String>,
    },
    /// Candidate HN indices below theta.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Randomized check of the covering argument for theta.
    CheckCover {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classify a subset of a finite poset or of the dominant cone.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Finite poset JSON file.
        #[arg(long, conflicts_with = "kind")]
        poset: Option<String>,
        /// Comma-separated element names (finite poset mode).
        #[arg(long, requires = "poset", allow_hyphen_values = true)]
        subset: Option<String>,
        #[arg(long, value_enum, requires = "point")]
        kind: Option<SetKind>,
        /// Coweight; repeat for several. Intervals take consecutive pairs.
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Minimal constants c', c'' from a strangeness table.
    Constants {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        genus: Option<u32>,
        /// Strangeness table JSON file (default: all zero).
        #[arg(long, conflicts_with = "preset")]
        strangeness: Option<String>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetKind {
    Down,
    Up,
    Interval,
    Explicit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    /// Characteristic zero: all strangeness vanishes.
    Zero,
    /// Characteristic 2, type C: Sym^2 on the Siegel Levi.
    SymplecticChar2,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Retract { .. } => "retract",
            Command::Stratify { .. } => "stratify",
            Command::Enumerate { .. } => "enumerate",
            Command::CheckCover { .. } => "check-cover",
            Command::Classify { .. } => "classify",
            Command::Constants { .. } => "constants",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Roots { common }
            | Command::Retract { common, .. }
            | Command::Stratify { common, .. }
            | Command::Enumerate { common, .. }
            | Command::CheckCover { common, .. }
            | Command::Classify { common, .. }
            | Command::Constants { common, .. } => common,
        }
    }
}

/// Result of a command: JSON payload, table rendering and exit code.
struct Output {
    result: Value,
    table: String,
    code: i32,
}

impl Output {
    fn ok(result: Value, table: String) -> Self {
        Output {
            result,
            table,
            code: EXIT_OK,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn fmt_cw(c: &Coweight) -> String {
    c.to_string()
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..headers.len())
        .map(|k| {
            rows.iter()
                .map(|r| r[k].chars().count())
                .chain([headers[k].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(headers.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn pairs(items: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = items.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    table(&["field", "value"], &rows)
}

fn require_seed(json: bool, seed: Option<u64>, command: &str) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if json => Err(Error::Parse(format!("{command} needs --seed with --json"))),
        None => Ok(0),
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn execute(cmd: &Command, g: &GroupData) -> Result<Output> {
    let json = cmd.common().json;
    match cmd {
        Command::Roots { .. } => {
            let rows: Vec<Vec<String>> = g
                .roots()
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    vec![
                        (k + 1).to_string(),
                        r.to_string(),
                        r.height().to_string(),
                        if r.is_positive() { "+" } else { "-" }.to_string(),
                    ]
                })
                .collect();
            let roots: Vec<Value> = g
                .roots()
                .iter()
                .map(|r| json!({ "coefs": r.coefs, "height": r.height(), "positive": r.is_positive() }))
                .collect();
            let text = table(&["#", "coefficients", "height", "sign"], &rows) + &format!("{} roots\n", rows.len());
            Ok(Output::ok(json!({ "count": roots.len(), "roots": roots }), text))
        }
        Command::Retract { lambda, eta, .. } => {
            let lam = g.parse_coweight(lambda)?;
            match eta {
                None => {
                    let r = retract(g, &lam)?;
                    let text = pairs(&[
                        ("lambda", fmt_cw(&lam)),
                        ("mu", fmt_cw(&r.mu)),
                        ("support", r.support.to_string()),
                        ("coefficients", crate::rational::format_list(&r.coefficients)),
                    ]);
                    let mut v = to_value(&r);
                    v["lambda"] = to_value(&lam);
                    Ok(Output::ok(v, text))
                }
                Some(eta) => {
                    let eta = g.parse_coweight(eta)?;
                    let mu = retract_shifted(g, &eta, &lam)?;
                    let text = pairs(&[("lambda", fmt_cw(&lam)), ("eta", fmt_cw(&eta)), ("mu", fmt_cw(&mu))]);
                    Ok(Output::ok(json!({ "lambda": lam, "eta": eta, "mu": mu }), text))
                }
            }
        }
        Command::Stratify {
            lambda,
            eta,
            genus,
            gamma_m,
            ..
        } => {
            let lam = g.parse_coweight(lambda)?;
            let hn = hn_parabolic(g, &lam)?;
            let eta = match eta {
                Some(e) => g.parse_coweight(e)?,
                None => g.zero(),
            };
            let (index, stratum) = eta_stratum(g, &eta, &lam)?;
            let mut result = json!({
                "lambda": lam,
                "hn_gamma_M": hn,
                "eta": eta,
                "stratum": { "index": index, "set": stratum },
            });
            let mut items = vec![
                ("lambda", fmt_cw(&lam)),
                ("hn gamma_M", hn.to_string()),
                ("eta", fmt_cw(&eta)),
                ("stratum gamma_M", index.gamma_m.to_string()),
            ];
            if let Some(genus) = genus {
                let cover = covering_set(g, *genus, &lam)?;
                items.push(("covering gamma_M", cover.gamma_m.to_string()));
                result["covering"] = to_value(&cover);
            }
            if let Some(nodes) = gamma_m {
                let levi = NodeSet::parse(nodes, g.rank())?;
                let sub = canonical_levi(g, levi, &lam)?;
                items.push(("canonical sub-Levi", sub.to_string()));
                result["canonical_levi"] = to_value(&sub);
            }
            Ok(Output::ok(result, pairs(&items)))
        }
        Command::Enumerate { theta, .. } => {
            let theta = g.parse_coweight(theta)?;
            let cands = enumerate_candidates(g, &theta)?;
            let rows: Vec<Vec<String>> = cands
                .iter()
                .map(|c| vec![fmt_cw(&c.coweight()), c.gamma_m.to_string()])
                .collect();
            let text = table(&["mu", "gamma_M"], &rows) + &format!("{} candidates\n", rows.len());
            Ok(Output::ok(json!({ "theta": theta, "count": cands.len(), "candidates": cands }), text))
        }
        Command::CheckCover {
            genus,
            theta,
            samples,
            seed,
            ..
        } => {
            let seed = require_seed(json, *seed, "check-cover")?;
            let theta = g.parse_coweight(theta)?;
            let options = CoverOptions {
                samples: *samples,
                ..CoverOptions::default()
            };
            let mut rng = rng_from_seed(seed);
            let report = check_theorem_cover(g, *genus, &theta, &options, &mut rng)?;
            let mut items = vec![
                ("theta", fmt_cw(&theta)),
                ("genus", genus.to_string()),
                ("seed", seed.to_string()),
                ("checked", report.checked.to_string()),
                ("skipped", report.skipped.to_string()),
                ("failures", report.failures.len().to_string()),
            ];
            if let Some(note) = &report.note {
                items.push(("note", note.clone()));
            }
            let mut text = pairs(&items);
            for f in &report.failures {
                let w = f.witness.as_ref().map(fmt_cw).unwrap_or_else(|| "-".into());
                text += &format!("failure: lambda={} stage={:?} witness={w}\n", fmt_cw(&f.lambda), f.stage);
            }
            let code = if report.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_COVER_FAILURES
            };
            Ok(Output {
                result: to_value(&report),
                table: text,
                code,
            })
        }
        Command::Classify {
            poset,
            subset,
            kind,
            point,
            seed,
            ..
        } => {
            if let Some(path) = poset {
                let p = FinitePoset::from_json(&read_file(path)?)?;
                let names: Vec<&str> = match subset {
                    Some(s) => s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect(),
                    None => Vec::new(),
                };
                let z = names
                    .iter()
                    .map(|n| p.index_of(n).ok_or_else(|| Error::Parse(format!("unknown element {n}"))))
                    .collect::<Result<Vec<usize>>>()?;
                let class = classify_finite(&p, &z)?;
                let text = pairs(&[("subset", names.join(",")), ("class", class.to_string())]);
                return Ok(Output::ok(json!({ "subset": names, "class": class }), text));
            }
            let Some(kind) = kind else {
                return Err(Error::Parse("classify needs --poset or --kind".into()));
            };
            let seed = require_seed(json, *seed, "classify")?;
            let points = point
                .iter()
                .map(|p| g.parse_coweight(p))
                .collect::<Result<Vec<Coweight>>>()?;
            let desc = match kind {
                SetKind::Down => SetDescription::DownClosure(points),
                SetKind::Up => SetDescription::UpClosure(points),
                SetKind::Explicit => SetDescription::Explicit(points),
                SetKind::Interval => {
                    if points.len() % 2 != 0 {
                        return Err(Error::Parse("interval kind needs an even number of --point".into()));
                    }
                    SetDescription::IntervalUnion(points.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
                }
            };
            let mut rng = rng_from_seed(seed);
            let c = classify_cone(g, &desc, &mut rng, &Sampler::default())?;
            let mut items = vec![("class", c.class.to_string()), ("proof", c.proof.to_string())];
            if let Some(w) = &c.witness {
                items.push(("witness", fmt_cw(w)));
            }
            Ok(Output::ok(json!({ "set": desc, "classification": c }), pairs(&items)))
        }
        Command::Constants {
            genus,
            strangeness,
            preset,
            ..
        } => {
            let table_data = match (strangeness, preset) {
                (Some(path), _) => StrangenessTable::from_json(g, &read_file(path)?, *genus)?,
                (None, Some(Preset::SymplecticChar2)) => {
                    StrangenessTable::symplectic_char2(g, genus.ok_or_else(|| Error::Parse("--genus is required".into()))?)?
                }
                (None, _) => StrangenessTable::zero(genus.ok_or_else(|| Error::Parse("--genus is required".into()))?),
            };
            let c = minimal_constants(g, &table_data);
            let rows: Vec<Vec<String>> = (0..g.rank())
                .map(|i| {
                    vec![
                        (i + 1).to_string(),
                        format_rational(&c.c_prime[i]),
                        format_rational(&c.c_double_prime[i]),
                        c.constraints[i].to_string(),
                    ]
                })
                .collect();
            let text = format!("genus {}\n", table_data.genus) + &table(&["node", "c'", "c''", "constraints"], &rows);
            let mut v = to_value(&c);
            v["genus"] = json!(table_data.genus);
            Ok(Output::ok(v, text))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let common = cli.command.common();
    let outcome = GroupData::from_spec_str(&common.group).and_then(|g| {
        let o = execute(&cli.command, &g)?;
        Ok((g, o))
    });
    match outcome {
        Ok((g, o)) => {
            let text = if common.json {
                let doc = json!({
                    "command": cli.command.name(),
                    "group": g.spec().to_string(),
                    "result": o.result,
                });
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            } else {
                o.table
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DOMAIN;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hnindex").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn roots_a2() {
        let (code, out, _) = call(&["roots", "--group", "A2", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "roots");
        assert_eq!(v["group"], "A2");
        assert_eq!(v["result"]["count"], 6);
    }

    #[test]
    fn retract_a2() {
        let (code, out, _) = call(&["retract", "--group", "A2", "--lambda", "1,-1", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["mu"]["pairings"], json!(["1/2", "0"]));
        let (code, out, _) = call(&["retract", "--group", "A2", "--lambda", "1,-1"]);
        assert_eq!(code, 0);
        assert!(out.contains("mu"));
    }

    #[test]
    fn error_codes() {
        let (code, out, err) = call(&["retract", "--group", "A2", "--lambda", "1,x"]);
        assert_eq!((code, out.is_empty()), (EXIT_USAGE, true));
        assert!(err.starts_with("error:"));
        let (code, out, _) = call(&["retract", "--group", "A2", "--lambda", "1,2,3"]);
        assert_eq!((code, out.is_empty()), (EXIT_DOMAIN, true));
        let (code, out, _) = call(&["retract", "--group", "Q2", "--lambda", "1"]);
        assert!(code != 0 && out.is_empty());
        let (code, out, _) = call(&["bogus"]);
        assert_eq!((code, out.is_empty()), (EXIT_USAGE, true));
        let (code, out, _) = call(&["check-cover", "--group", "A2", "--genus", "2", "--theta", "2,2", "--json"]);
        assert_eq!((code, out.is_empty()), (EXIT_USAGE, true));
        let (code, out, _) = call(&["enumerate", "--group", "A2", "--theta", "1,-1"]);
        assert_eq!((code, out.is_empty()), (EXIT_DOMAIN, true));
    }

    #[test]
    fn check_cover_deterministic() {
        let args = [
            "check-cover", "--group", "A2", "--genus", "2", "--theta", "2,2", "--samples", "40", "--seed", "7", "--json",
        ];
        let (code, a, _) = call(&args);
        assert_eq!(code, 0);
        let (_, b, _) = call(&args);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["result"]["failures"], json!([]));
    }

    #[test]
    fn other_commands() {
        let (code, out, _) = call(&["enumerate", "--group", "A1 ad", "--theta", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("4 candidates"));
        let (code, out, _) = call(&["stratify", "--group", "A2", "--lambda", "1,2", "--eta", "1,1", "--genus", "1", "--json"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["constants", "--group", "C3", "--genus", "2", "--preset", "symplectic-char2"]);
        assert_eq!(code, 0);
        assert!(out.contains("3"));
        let (code, out, _) = call(&["classify", "--group", "A2", "--kind", "down", "--point", "2,2", "--json", "--seed", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"open\""));
        let (code, _, _) = call(&["classify", "--group", "A2", "--kind", "interval", "--point", "0,0"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = call(&["--help"]);
        assert_eq!(code, 0);
    }
}
