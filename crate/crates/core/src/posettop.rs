//! Preordered sets as topological spaces: open sets are the down-closed
//! sets. Finite preorders are classified exactly; subsets of the dominant
//! cone are classified from their description.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coneorder::{is_dominant, leq_holds};
use crate::error::{Error, Result};
use crate::rational::frac;
use crate::rootdata::{Coweight, GroupData};
use crate::sampling::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Open,
    Closed,
    LocallyClosed,
    Clopen,
    None,
    /// Cone descriptions only: neither a proof nor a witness was found.
    Undetermined,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Open => "open",
            Classification::Closed => "closed",
            Classification::LocallyClosed => "locally_closed",
            Classification::Clopen => "clopen",
            Classification::None => "none",
            Classification::Undetermined => "undetermined",
        };
        f.write_str(s)
    }
}

fn combine(open: bool, closed: bool, convex: bool) -> Classification {
    match (open, closed) {
        (true, true) => Classification::Clopen,
        (true, false) => Classification::Open,
        (false, true) => Classification::Closed,
        (false, false) if convex => Classification::LocallyClosed,
        _ => Classification::None,
    }
}

/// A finite preordered set; `leq[a][b]` means `a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitePoset {
    pub elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Flag {
    Bool(bool),
    Int(u8),
}

#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<serde_json::Value>,
    leq: Vec<Vec<Flag>>,
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition(format!("relation is not a {n}x{n} matrix")));
        }
        if let Some(a) = (0..n).find(|&a| !leq[a][a]) {
            return Err(Error::Precondition(format!("relation is not reflexive at {}", elements[a])));
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                if let Some(c) = (0..n).find(|&c| leq[b][c] && !leq[a][c]) {
                    return Err(Error::Precondition(format!(
                        "relation is not transitive: {} <= {} <= {}",
                        elements[a], elements[b], elements[c]
                    )));
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// Unnamed elements `0..n`.
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self> {
        let names = (0..leq.len()).map(|i| i.to_string()).collect();
        FinitePoset::new(names, leq)
    }

    /// Total order `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FinitePoset::from_matrix(leq).expect("a chain is a preorder")
    }

    pub fn antichain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        FinitePoset::from_matrix(leq).expect("an antichain is a preorder")
    }

    /// `{"elements": [...], "leq": [[bool or 0/1]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text)?;
        let elements = file
            .elements
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        let leq = file
            .leq
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|f| match f {
                        Flag::Bool(b) => Ok(b),
                        Flag::Int(0) => Ok(false),
                        Flag::Int(1) => Ok(true),
                        Flag::Int(k) => Err(Error::Parse(format!("relation entry {k} is not 0 or 1"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<_>>()?;
        FinitePoset::new(elements, leq)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Principal down-set `{y | y ≤ x}`.
    pub fn down_set(&self, x: usize) -> Vec<bool> {
        (0..self.len()).map(|y| self.leq[y][x]).collect()
    }

    pub fn is_down_closed(&self, z: &[bool]) -> bool {
        (0..self.len()).all(|x| !z[x] || (0..self.len()).all(|y| !self.leq[y][x] || z[y]))
    }

    pub fn is_up_closed(&self, z: &[bool]) -> bool {
        (0..self.len()).all(|x| !z[x] || (0..self.len()).all(|y| !self.leq[x][y] || z[y]))
    }

    /// `x₁ ≤ y ≤ x₂` with `x₁, x₂ ∈ Z` forces `y ∈ Z`.
    pub fn is_convex(&self, z: &[bool]) -> bool {
        let n = self.len();
        (0..n).all(|y| {
            z[y] || !(0..n).any(|a| z[a] && self.leq[a][y]) || !(0..n).any(|b| z[b] && self.leq[y][b])
        })
    }

    fn mask(&self, z: &[usize]) -> Result<Vec<bool>> {
        let mut m = vec![false; self.len()];
        for &x in z {
            if x >= self.len() {
                return Err(Error::Precondition(format!("element {x} is outside the poset")));
            }
            m[x] = true;
        }
        Ok(m)
    }
}

/// Open (down-closed), closed (up-closed) and locally closed (convex) tests.
pub fn classify_finite(p: &FinitePoset, z: &[usize]) -> Result<Classification> {
    let m = p.mask(z)?;
    Ok(classify_mask(p, &m))
}

pub fn classify_mask(p: &FinitePoset, z: &[bool]) -> Classification {
    combine(p.is_down_closed(z), p.is_up_closed(z), p.is_convex(z))
}

/// Reference classification straight from the definition of the topology:
/// materializes every open set and checks `Z = U ∩ F` over all pairs.
/// Subsets are bitmasks; requires at most 16 elements.
pub fn brute_force_classify_all(p: &FinitePoset) -> Vec<Classification> {
    let n = p.len();
    assert!(n <= 16, "brute force is limited to 16 elements");
    let full = (1u32 << n) - 1;
    let to_vec = |s: u32| -> Vec<bool> { (0..n).map(|i| s & (1 << i) != 0).collect() };
    let opens: Vec<u32> = (0..=full).filter(|&s| p.is_down_closed(&to_vec(s))).collect();
    let mut is_open = vec![false; 1 << n];
    let mut is_closed = vec![false; 1 << n];
    for &u in &opens {
        is_open[u as usize] = true;
        is_closed[(full & !u) as usize] = true;
    }
    let mut is_lc = vec![false; 1 << n];
    for &u in &opens {
        for &v in &opens {
            is_lc[(u & (full & !v)) as usize] = true;
        }
    }
    (0..=full as usize)
        .map(|s| combine(is_open[s], is_closed[s], is_lc[s]))
        .collect()
}

/// Reflexive-transitive closure of a relation (Warshall).
pub fn preorder_closure(mut rel: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = rel.len();
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    rel
}

/// Every preorder on `{0..n}` (labeled), `n ≤ 4`.
pub fn all_preorders(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 4, "exhaustive enumeration is limited to 4 elements");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            rel[a][b] = bits & (1 << k) != 0;
        }
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        if let Ok(p) = FinitePoset::from_matrix(rel) {
            out.push(p);
        }
    }
    out
}

/// Transitive closure of a random relation on `n` elements.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize) -> FinitePoset {
    let density = rng.random_range(0.05..0.6);
    let rel = (0..n).map(|_| (0..n).map(|_| rng.random_bool(density)).collect()).collect();
    FinitePoset::from_matrix(preorder_closure(rel)).expect("closure is a preorder")
}

/// Monotonicity of `f: p → q` and continuity (preimages of principal
/// down-sets are down-closed) are computed separately and must agree.
pub fn is_monotone_map_continuous(p: &FinitePoset, q: &FinitePoset, f: &[usize]) -> Result<bool> {
    if f.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: f.len(),
        });
    }
    if let Some(&y) = f.iter().find(|&&y| y >= q.len()) {
        return Err(Error::Precondition(format!("image {y} is outside the target")));
    }
    let n = p.len();
    let monotone = (0..n).all(|a| (0..n).all(|b| !p.leq(a, b) || q.leq(f[a], f[b])));
    // Opens of q are unions of principal down-sets, and preimages respect unions.
    let continuous = (0..q.len()).all(|y| {
        let down = q.down_set(y);
        let pre: Vec<bool> = f.iter().map(|&fx| down[fx]).collect();
        p.is_down_closed(&pre)
    });
    if monotone != continuous {
        return Err(Error::Invariant(format!(
            "monotone = {monotone} but continuous = {continuous}"
        )));
    }
    Ok(monotone)
}

/// A subset of the dominant cone, given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum SetDescription {
    DownClosure(Vec<Coweight>),
    UpClosure(Vec<Coweight>),
    /// Union of order intervals `[lower, upper]` inside the dominant cone.
    IntervalUnion(Vec<(Coweight, Coweight)>),
    Explicit(Vec<Coweight>),
}

impl SetDescription {
    fn points(&self) -> Vec<&Coweight> {
        match self {
            SetDescription::DownClosure(v) | SetDescription::UpClosure(v) | SetDescription::Explicit(v) => {
                v.iter().collect()
            }
            SetDescription::IntervalUnion(v) => v.iter().flat_map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeClassification {
    pub class: Classification,
    /// Short tag naming the argument used.
    pub proof: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coweight>,
}

impl ConeClassification {
    fn new(class: Classification, proof: &'static str) -> Self {
        ConeClassification {
            class,
            proof,
            witness: None,
        }
    }

    fn with_witness(class: Classification, proof: &'static str, witness: Coweight) -> Self {
        ConeClassification {
            class,
            proof,
            witness: Some(witness),
        }
    }
}

/// Least dominant coweight with the given central part: zero pairings.
fn bottom(lam: &Coweight) -> Coweight {
    let mut b = lam.clone();
    b.pairings.iter_mut().for_each(|x| x.set_zero());
    b
}

fn is_bottom(lam: &Coweight) -> bool {
    lam.pairings.iter().all(Zero::is_zero)
}

fn midpoint(a: &Coweight, b: &Coweight) -> Coweight {
    (a + b).scale(&frac(1, 2))
}

fn in_intervals(g: &GroupData, intervals: &[(Coweight, Coweight)], lam: &Coweight) -> bool {
    intervals
        .iter()
        .any(|(lo, hi)| leq_holds(g, g.gamma(), lo, lam) && leq_holds(g, g.gamma(), lam, hi))
}

/// Classifies a described subset of `Λ_G^{+,Q}` under `≤_G`. Finite and
/// closure descriptions are exact; interval unions fall back on sampled
/// intermediate points when the intervals are not coherent.
pub fn classify_cone<R: Rng>(
    g: &GroupData,
    s: &SetDescription,
    rng: &mut R,
    sampler: &Sampler,
) -> Result<ConeClassification> {
    for p in s.points() {
        g.check(p)?;
        if !is_dominant(p) {
            return Err(Error::NotDominant {
                what: "generator",
                value: p.to_string(),
            });
        }
    }
    if s.points().is_empty() {
        return Ok(ConeClassification::new(Classification::Clopen, "empty_set"));
    }
    if g.rank() == 0 {
        // Only equal coweights are comparable: every subset is clopen.
        return Ok(ConeClassification::new(Classification::Clopen, "discrete_order"));
    }
    Ok(match s {
        SetDescription::DownClosure(_) => ConeClassification::new(Classification::Open, "down_closure_is_open"),
        SetDescription::UpClosure(gens) => {
            // Coweights with different central parts are incomparable, so the
            // up-set is also open exactly when each central class it meets
            // contains that class's least element.
            if gens.iter().all(|a| gens.iter().any(|b| b.central == a.central && is_bottom(b))) {
                ConeClassification::new(Classification::Clopen, "up_closure_of_least_element")
            } else {
                ConeClassification::new(Classification::Closed, "up_closure_is_closed")
            }
        }
        SetDescription::Explicit(points) => classify_explicit(g, points),
        SetDescription::IntervalUnion(intervals) => classify_intervals(g, intervals, rng, sampler),
    })
}

fn classify_explicit(g: &GroupData, points: &[Coweight]) -> ConeClassification {
    // Two distinct comparable points bound a segment of dominant points.
    for a in points {
        for b in points {
            if a != b && leq_holds(g, g.gamma(), a, b) {
                let mid = midpoint(a, b);
                if !points.contains(&mid) {
                    return ConeClassification::with_witness(Classification::None, "segment_between_members", mid);
                }
            }
        }
    }
    if points.iter().all(is_bottom) {
        ConeClassification::new(Classification::Open, "least_elements_only")
    } else {
        ConeClassification::new(Classification::LocallyClosed, "finite_antichain")
    }
}

fn classify_intervals<R: Rng>(
    g: &GroupData,
    intervals: &[(Coweight, Coweight)],
    rng: &mut R,
    sampler: &Sampler,
) -> ConeClassification {
    let gamma = g.gamma();
    let live: Vec<(Coweight, Coweight)> = intervals
        .iter()
        .filter(|(lo, hi)| leq_holds(g, gamma, lo, hi))
        .cloned()
        .collect();
    if live.is_empty() {
        return ConeClassification::new(Classification::Clopen, "empty_set");
    }
    let coherent = live.iter().all(|(lo_k, _)| {
        live.iter().all(|(_, hi_m)| {
            !leq_holds(g, gamma, lo_k, hi_m)
                || live
                    .iter()
                    .any(|(lo_j, hi_j)| leq_holds(g, gamma, lo_j, lo_k) && leq_holds(g, gamma, hi_m, hi_j))
        })
    });
    if !coherent {
        // Look for y with lo_k ≤ y ≤ hi_m outside the union.
        for (lo, _) in &live {
            for (_, hi) in &live {
                if !leq_holds(g, gamma, lo, hi) {
                    continue;
                }
                let mut candidates = vec![midpoint(lo, hi)];
                for _ in 0..32 {
                    let t = frac(rng.random_range(1..16), 16);
                    candidates.push(lo + &(hi - lo).scale(&t));
                    candidates.push(sampler.below(rng, g, hi, gamma));
                }
                for y in candidates {
                    if is_dominant(&y)
                        && leq_holds(g, gamma, lo, &y)
                        && leq_holds(g, gamma, &y, hi)
                        && !in_intervals(g, &live, &y)
                    {
                        return ConeClassification::with_witness(Classification::None, "point_between_members", y);
                    }
                }
            }
        }
        return ConeClassification::new(Classification::Undetermined, "incoherent_intervals_no_witness");
    }
    // Bounded, so never up-closed. Open iff it contains the whole down-set of each upper end.
    if live.iter().all(|(lo, hi)| lo == &bottom(hi)) {
        return ConeClassification::new(Classification::Open, "intervals_from_least_element");
    }
    if let Some((_, hi)) = live.iter().find(|(_, hi)| !in_intervals(g, &live, &bottom(hi))) {
        return ConeClassification::with_witness(Classification::LocallyClosed, "coherent_intervals", bottom(hi));
    }
    for (_, hi) in &live {
        for _ in 0..32 {
            let y = sampler.below(rng, g, hi, gamma);
            if is_dominant(&y) && !in_intervals(g, &live, &y) {
                return ConeClassification::with_witness(Classification::LocallyClosed, "coherent_intervals", y);
            }
        }
    }
    ConeClassification::new(Classification::LocallyClosed, "coherent_intervals_openness_unknown")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_from_seed;

    #[test]
    fn chain_examples() {
        let c = FinitePoset::chain(3);
        assert_eq!(classify_finite(&c, &[0]).unwrap(), Classification::Open);
        assert_eq!(classify_finite(&c, &[1]).unwrap(), Classification::LocallyClosed);
        assert_eq!(classify_finite(&c, &[0, 2]).unwrap(), Classification::None);
        assert_eq!(classify_finite(&c, &[2]).unwrap(), Classification::Closed);
        assert_eq!(classify_finite(&c, &[]).unwrap(), Classification::Clopen);
        assert_eq!(classify_finite(&c, &[0, 1, 2]).unwrap(), Classification::Clopen);
        assert!(classify_finite(&c, &[3]).is_err());
    }

    #[test]
    fn rejects_non_preorders() {
        assert!(FinitePoset::from_matrix(vec![vec![false]]).is_err());
        let r = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(FinitePoset::from_matrix(r).is_err());
    }

    #[test]
    fn oracle_agrees_on_small_posets() {
        for n in 0..=3 {
            for p in all_preorders(n) {
                let oracle = brute_force_classify_all(&p);
                for (s, expected) in oracle.iter().enumerate() {
                    let z: Vec<bool> = (0..n).map(|i| s & (1 << i) != 0).collect();
                    assert_eq!(classify_mask(&p, &z), *expected);
                }
            }
        }
        assert_eq!(all_preorders(3).len(), 29);
    }

    #[test]
    fn monotone_maps() {
        let chain = FinitePoset::chain(2);
        let anti = FinitePoset::antichain(2);
        assert!(is_monotone_map_continuous(&chain, &chain, &[0, 1]).unwrap());
        assert!(is_monotone_map_continuous(&chain, &chain, &[1, 1]).unwrap());
        assert!(!is_monotone_map_continuous(&chain, &chain, &[1, 0]).unwrap());
        assert!(!is_monotone_map_continuous(&chain, &anti, &[1, 0]).unwrap());
        assert!(is_monotone_map_continuous(&anti, &chain, &[1, 0]).unwrap());
    }

    #[test]
    fn poset_json() {
        let p = FinitePoset::from_json(r#"{"elements":["a","b"],"leq":[[1,1],[0,true]]}"#).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        assert_eq!(p.index_of("b"), Some(1));
        assert!(FinitePoset::from_json(r#"{"elements":["a"],"leq":[[2]]}"#).is_err());
    }

    #[test]
    fn cone_examples() {
        let g = GroupData::from_spec_str("A2").unwrap();
        let theta = Coweight::from_ints(&[2, 2], &[]);
        let mut rng = rng_from_seed(4);
        let s = Sampler::default();
        let classify = |d: SetDescription, rng: &mut _| classify_cone(&g, &d, rng, &s).unwrap();

        let down = classify(SetDescription::DownClosure(vec![theta.clone()]), &mut rng);
        assert_eq!(down.class, Classification::Open);
        let up = classify(SetDescription::UpClosure(vec![theta.clone()]), &mut rng);
        assert_eq!(up.class, Classification::Closed);
        let up0 = classify(SetDescription::UpClosure(vec![theta.clone(), g.zero()]), &mut rng);
        assert_eq!(up0.class, Classification::Clopen);

        let single = classify(SetDescription::IntervalUnion(vec![(theta.clone(), theta.clone())]), &mut rng);
        assert_eq!(single.class, Classification::LocallyClosed);
        let origin = classify(SetDescription::IntervalUnion(vec![(g.zero(), g.zero())]), &mut rng);
        assert_eq!(origin.class, Classification::Open);

        let pair = classify(SetDescription::Explicit(vec![g.zero(), theta.clone()]), &mut rng);
        assert_eq!(pair.class, Classification::None);
        assert_eq!(pair.witness, Some(Coweight::from_ints(&[1, 1], &[])));
        let anti = classify(
            SetDescription::Explicit(vec![Coweight::from_ints(&[1, 0], &[]), Coweight::from_ints(&[0, 1], &[])]),
            &mut rng,
        );
        assert_eq!(anti.class, Classification::LocallyClosed);

        // Two disjoint intervals with a gap between them.
        let gap = classify(
            SetDescription::IntervalUnion(vec![
                (g.zero(), g.zero()),
                (theta.clone(), theta.clone()),
            ]),
            &mut rng,
        );
        assert_eq!(gap.class, Classification::None);
        assert!(gap.witness.is_some());

        assert!(classify_cone(&g, &SetDescription::DownClosure(vec![Coweight::from_ints(&[-1, 0], &[])]), &mut rng, &s).is_err());
    }
}
