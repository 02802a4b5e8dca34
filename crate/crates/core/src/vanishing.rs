//! Root-space submodules of `𝔫(P)`, user-supplied strangeness data and the
//! minimal constants `c′_i`, `c″_i` that make the vanishing inequalities hold.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::rootdata::{Coweight, GroupData, NodeSet, Root, SimpleType};

/// `V_{M′,α̌}`: roots whose coefficients off `Γ_{M′}` agree with those of `α̌`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootModule {
    pub levi: NodeSet,
    pub root: Root,
    pub members: Vec<Root>,
}

impl RootModule {
    pub fn contains(&self, beta: &Root) -> bool {
        self.members.contains(beta)
    }
}

/// Coefficients of `root` with the `levi` nodes zeroed: a class invariant.
fn class_key(levi: NodeSet, root: &Root) -> Vec<i64> {
    root.coefs
        .iter()
        .enumerate()
        .map(|(i, &c)| if levi.contains(i) { 0 } else { c })
        .collect()
}

fn check_root(g: &GroupData, levi: NodeSet, alpha: &Root) -> Result<()> {
    if alpha.coefs.len() != g.rank() {
        return Err(Error::DimensionMismatch {
            expected: g.rank(),
            found: alpha.coefs.len(),
        });
    }
    if !levi.is_subset(g.gamma()) {
        return Err(Error::Precondition(format!("{levi} is not a subset of the Dynkin vertices")));
    }
    if !g.roots().contains(alpha) {
        return Err(Error::Precondition(format!("{alpha} is not a root")));
    }
    if alpha.support().is_subset(levi) {
        return Err(Error::Precondition(format!("{alpha} is a root of the Levi {levi}")));
    }
    Ok(())
}

pub fn root_module(g: &GroupData, levi: NodeSet, alpha: &Root) -> Result<RootModule> {
    check_root(g, levi, alpha)?;
    let key = class_key(levi, alpha);
    let members = g.roots().iter().filter(|b| class_key(levi, b) == key).cloned().collect();
    Ok(RootModule {
        levi,
        root: alpha.clone(),
        members,
    })
}

/// Strangeness values keyed by `(Γ_{M′}, root class, dual)`; missing keys are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrangenessTable {
    pub genus: u32,
    entries: BTreeMap<(NodeSet, Vec<i64>, bool), Rational>,
}

#[derive(Debug, Deserialize, Serialize)]
struct EntryFile {
    levi: NodeSet,
    root_coefs: Vec<i64>,
    dual: bool,
    #[serde(with = "crate::rational::serde_rational")]
    value: Rational,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TableFile {
    Full { genus: u32, entries: Vec<EntryFile> },
    Bare(Vec<EntryFile>),
}

impl StrangenessTable {
    /// The characteristic-zero table: every strangeness vanishes.
    pub fn zero(genus: u32) -> Self {
        StrangenessTable {
            genus,
            entries: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, g: &GroupData, levi: NodeSet, root: &Root, dual: bool, value: Rational) -> Result<()> {
        check_root(g, levi, root)?;
        if value.is_negative() {
            return Err(Error::Precondition(format!("strangeness {value} is negative")));
        }
        let key = (levi, class_key(levi, root), dual);
        match self.entries.get(&key) {
            Some(old) if old != &value => Err(Error::Precondition(format!(
                "conflicting strangeness for {root} over {levi}: {old} vs {value}"
            ))),
            _ => {
                self.entries.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn get(&self, levi: NodeSet, root: &Root, dual: bool) -> Rational {
        self.entries
            .get(&(levi, class_key(levi, root), dual))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Pointwise `≤` on the union of keys.
    pub fn dominated_by(&self, other: &StrangenessTable) -> bool {
        self.entries
            .iter()
            .all(|(k, v)| other.entries.get(k).is_some_and(|w| v <= w))
    }

    /// Reads `{"genus": g, "entries": [...]}` or a bare entry array (genus
    /// then comes from `default_genus`).
    pub fn from_json(g: &GroupData, text: &str, default_genus: Option<u32>) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        let (genus, entries) = match file {
            TableFile::Full { genus, entries } => (genus, entries),
            TableFile::Bare(entries) => (
                default_genus.ok_or_else(|| Error::Parse("strangeness array needs a genus".into()))?,
                entries,
            ),
        };
        let mut table = StrangenessTable::zero(genus);
        for e in entries {
            if e.levi.iter().any(|i| i >= g.rank()) {
                return Err(Error::NodeOutOfRange {
                    index: e.levi.iter().max().unwrap_or(0) + 1,
                    rank: g.rank(),
                });
            }
            table.insert(g, e.levi, &Root { coefs: e.root_coefs }, e.dual, e.value)?;
        }
        Ok(table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryFile> = self
            .entries
            .iter()
            .map(|((levi, coefs, dual), value)| EntryFile {
                levi: *levi,
                root_coefs: coefs.clone(),
                dual: *dual,
                value: value.clone(),
            })
            .collect();
        serde_json::json!({ "genus": self.genus, "entries": entries })
    }

    /// Characteristic 2, `Sp(2n)`: the Siegel Levi acts on `𝔫(P) ≅ Sym²` with
    /// strangeness `g − 1`. Requires a single factor `C_n`.
    pub fn symplectic_char2(g: &GroupData, genus: u32) -> Result<Self> {
        let spec = g.spec();
        let n = g.rank();
        if spec.factors.len() != 1 || spec.factors[0].0 != SimpleType::C {
            return Err(Error::Precondition(format!("{spec} is not of type C")));
        }
        let mut table = StrangenessTable::zero(genus);
        let value = int(genus as i64 - 1).max(Rational::zero());
        table.insert(g, NodeSet::full(n - 1), &Root::simple(n, n - 1), true, value)?;
        Ok(table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalConstants {
    #[serde(rename = "c_prime", with = "crate::rational::serde_rational_vec")]
    pub c_prime: Vec<Rational>,
    #[serde(rename = "c_double_prime", with = "crate::rational::serde_rational_vec")]
    pub c_double_prime: Vec<Rational>,
    /// Per node: number of `(M′, α̌)` pairs with `i ∉ Γ_{M′}`, `coef_i(α̌) > 0`.
    pub constraints: Vec<usize>,
}

/// Smallest `c′_i`, `c″_i` with `coef_i(α̌)·c′_i ≥ 2g−2 + strng(M′, V*)` and
/// `coef_i(α̌)·c″_i ≥ strng(M′, V_{−α̌})` over all Levis `M′ ∌ i` and
/// positive roots `α̌`. `c″` is clamped at 0.
pub fn minimal_constants(g: &GroupData, table: &StrangenessTable) -> MinimalConstants {
    let r = g.rank();
    let base = int(2 * table.genus as i64 - 2);
    let mut c_prime: Vec<Option<Rational>> = vec![None; r];
    let mut c_double = vec![Rational::zero(); r];
    let mut constraints = vec![0usize; r];
    let positive: Vec<&Root> = g.positive_roots().collect();
    for levi in NodeSet::all_subsets(r) {
        for alpha in &positive {
            let negated = alpha.negated();
            for i in levi.complement(r).iter() {
                let coef = alpha.coef(i);
                if coef <= 0 {
                    continue;
                }
                constraints[i] += 1;
                let coef = int(coef);
                let lower = (&base + table.get(levi, alpha, true)) / &coef;
                if c_prime[i].as_ref().is_none_or(|c| &lower > c) {
                    c_prime[i] = Some(lower);
                }
                let lower = table.get(levi, &negated, false) / &coef;
                if lower > c_double[i] {
                    c_double[i] = lower;
                }
            }
        }
    }
    MinimalConstants {
        // Each node has at least the constraint from its own simple root.
        c_prime: c_prime.into_iter().map(|c| c.expect("simple root constrains its node")).collect(),
        c_double_prime: c_double,
        constraints,
    }
}

/// `{i ∈ Γ_M : <λ, α̌_i> = 0}`.
pub fn canonical_levi(g: &GroupData, gamma_m: NodeSet, lam: &Coweight) -> Result<NodeSet> {
    g.check(lam)?;
    if !gamma_m.is_subset(g.gamma()) {
        return Err(Error::Precondition(format!("{gamma_m} is not a subset of the Dynkin vertices")));
    }
    if let Some(i) = gamma_m.iter().find(|&i| lam.pairings[i].is_negative()) {
        return Err(Error::NotDominant {
            what: "lambda on the Levi",
            value: format!("{lam} (node {})", i + 1),
        });
    }
    Ok(NodeSet::from_indices(gamma_m.iter().filter(|&i| lam.pairings[i].is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> GroupData {
        GroupData::from_spec_str(s).unwrap()
    }

    fn root(c: &[i64]) -> Root {
        Root { coefs: c.to_vec() }
    }

    #[test]
    fn module_examples() {
        let a2 = group("A2");
        let m = root_module(&a2, NodeSet::empty(), &root(&[1, 1])).unwrap();
        assert_eq!(m.members, vec![root(&[1, 1])]);

        let levi = NodeSet::from_indices([0]);
        let m = root_module(&a2, levi, &root(&[0, 1])).unwrap();
        let mut members = m.members.clone();
        members.sort();
        assert_eq!(members, vec![root(&[0, 1]), root(&[1, 1])]);
        let m2 = root_module(&a2, levi, &root(&[1, 1])).unwrap();
        assert!(m2.members.iter().all(|b| m.contains(b)) && m2.members.len() == m.members.len());

        assert!(root_module(&a2, levi, &root(&[1, 0])).is_err());
        assert!(root_module(&a2, levi, &root(&[2, 1])).is_err());
    }

    #[test]
    fn zero_table_gives_standard_constants() {
        for spec in ["A3", "B3", "C3", "G2", "D4", "F4"] {
            let g = group(spec);
            for genus in 1..=3 {
                let c = minimal_constants(&g, &StrangenessTable::zero(genus));
                assert!(c.c_prime.iter().all(|x| x == &int(2 * genus as i64 - 2)), "{spec}");
                assert!(c.c_double_prime.iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn genus_zero_depends_on_root_coefficients() {
        // (−2)/coef is maximized at the largest coefficient.
        let c = minimal_constants(&group("A2"), &StrangenessTable::zero(0));
        assert_eq!(c.c_prime, vec![int(-2), int(-2)]);
        let c = minimal_constants(&group("G2"), &StrangenessTable::zero(0));
        let max_coef: Vec<i64> = (0..2)
            .map(|i| group("G2").roots().iter().map(|r| r.coef(i)).max().unwrap())
            .collect();
        let expected: Vec<Rational> = max_coef.iter().map(|&m| Rational::new((-2).into(), m.into())).collect();
        assert_eq!(c.c_prime, expected);
    }

    #[test]
    fn single_entry_dominates() {
        let a2 = group("A2");
        let mut t = StrangenessTable::zero(2);
        t.insert(&a2, NodeSet::empty(), &root(&[1, 0]), true, int(1)).unwrap();
        let c = minimal_constants(&a2, &t);
        assert_eq!(c.c_prime[0], int(3));
        assert_eq!(c.c_prime[1], int(2));
    }

    #[test]
    fn symplectic_preset() {
        for n in 2..=4 {
            let g = group(&format!("C{n}"));
            for genus in 2..=3 {
                let t = StrangenessTable::symplectic_char2(&g, genus);
                let c = minimal_constants(&g, &t.unwrap());
                assert!(c.c_prime[n - 1] > int(2 * genus as i64 - 2));
            }
        }
        assert!(StrangenessTable::symplectic_char2(&group("B2"), 2).is_err());
    }

    #[test]
    fn table_rules() {
        let a2 = group("A2");
        let mut t = StrangenessTable::zero(1);
        assert!(t.insert(&a2, NodeSet::empty(), &root(&[1, 0]), true, int(-1)).is_err());
        let levi = NodeSet::from_indices([0]);
        t.insert(&a2, levi, &root(&[0, 1]), false, int(2)).unwrap();
        // Same class, same value: accepted; different value: rejected.
        t.insert(&a2, levi, &root(&[1, 1]), false, int(2)).unwrap();
        assert!(t.insert(&a2, levi, &root(&[1, 1]), false, int(3)).is_err());
        assert_eq!(t.get(levi, &root(&[1, 1]), false), int(2));
        assert_eq!(t.get(levi, &root(&[1, 1]), true), int(0));
    }

    #[test]
    fn json_forms() {
        let a2 = group("A2");
        let text = r#"{"genus":2,"entries":[{"levi":[1],"root_coefs":[0,1],"dual":true,"value":"1/2"}]}"#;
        let t = StrangenessTable::from_json(&a2, text, None).unwrap();
        assert_eq!(t.genus, 2);
        assert_eq!(t.get(NodeSet::from_indices([0]), &root(&[1, 1]), true), Rational::new(1.into(), 2.into()));
        let round = StrangenessTable::from_json(&a2, &t.to_json().to_string(), None).unwrap();
        assert_eq!(round, t);
        let bare = r#"[{"levi":[],"root_coefs":[1,0],"dual":true,"value":"1"}]"#;
        assert!(StrangenessTable::from_json(&a2, bare, None).is_err());
        assert_eq!(StrangenessTable::from_json(&a2, bare, Some(3)).unwrap().genus, 3);
    }

    #[test]
    fn canonical_levi_examples() {
        let a2 = group("A2");
        let all = a2.gamma();
        assert_eq!(canonical_levi(&a2, all, &Coweight::from_ints(&[1, 2], &[])).unwrap(), NodeSet::empty());
        assert_eq!(canonical_levi(&a2, all, &a2.zero()).unwrap(), all);
        assert_eq!(
            canonical_levi(&a2, all, &Coweight::from_ints(&[0, 1], &[])).unwrap(),
            NodeSet::from_indices([0])
        );
        assert!(canonical_levi(&a2, all, &Coweight::from_ints(&[-1, 1], &[])).is_err());
        assert!(canonical_levi(&a2, NodeSet::from_indices([1]), &Coweight::from_ints(&[-1, 1], &[])).is_ok());
    }
}
