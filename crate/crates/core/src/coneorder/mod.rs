//! Dominance preorders `≤_G`, `≤_M`, the dominant cone and its faces, and
//! the projector `pr_P`.

mod feasibility;

pub use feasibility::{cone_feasible, Certificate, ConeProblem, Constraint};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::linalg;
use crate::rational::Rational;
use crate::rootdata::{nonnegative, Coweight, GroupData, NodeSet};

/// Result of comparing two coweights in `≤_M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeqOutcome {
    pub holds: bool,
    /// The unique coefficients `c_j` (`j ∈ Γ_M`, in node order) with
    /// `λ₂ − λ₁ = Σ c_j α_j`, when the difference lies in that span.
    #[serde(serialize_with = "ser_opt_vec")]
    pub coefficients: Option<Vec<Rational>>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::rational::serde_rational_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

/// Solves `diff = Σ_{j∈nodes} c_j α_j`; `None` if `diff` is outside the span
/// (including any central discrepancy).
pub fn coroot_coefficients(g: &GroupData, nodes: NodeSet, diff: &Coweight) -> Option<Vec<Rational>> {
    if diff.central.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let block = g.cartan_block(nodes, nodes);
    let rhs: Vec<Rational> = nodes.iter().map(|i| diff.pairings[i].clone()).collect();
    let coefs = linalg::solve(&block, &rhs).expect("principal Cartan submatrix is invertible");
    // Remaining pairing equations off `nodes`.
    let residual_ok = nodes.complement(g.rank()).iter().all(|i| {
        let s: Rational = nodes.iter().zip(&coefs).map(|(j, c)| c * g.cartan_entry(i, j)).sum();
        s == diff.pairings[i]
    });
    residual_ok.then_some(coefs)
}

/// `λ₁ ≤_M λ₂` for the Levi on `gamma_m` (`gamma_m = Γ_G` gives `≤_G`).
pub fn leq(g: &GroupData, gamma_m: NodeSet, lam1: &Coweight, lam2: &Coweight) -> Result<LeqOutcome> {
    g.check(lam1)?;
    g.check(lam2)?;
    let coefficients = coroot_coefficients(g, gamma_m, &(lam2 - lam1));
    let holds = coefficients.as_deref().is_some_and(nonnegative);
    Ok(LeqOutcome { holds, coefficients })
}

/// Shorthand for `leq(..).holds` on already-validated coweights.
pub fn leq_holds(g: &GroupData, gamma_m: NodeSet, lam1: &Coweight, lam2: &Coweight) -> bool {
    coroot_coefficients(g, gamma_m, &(lam2 - lam1)).is_some_and(|c| nonnegative(&c))
}

pub fn leq_g(g: &GroupData, lam1: &Coweight, lam2: &Coweight) -> bool {
    leq_holds(g, g.gamma(), lam1, lam2)
}

pub fn is_dominant(lam: &Coweight) -> bool {
    nonnegative(&lam.pairings)
}

/// Pairings `>= 0` on `nodes`, i.e. dominance for the Levi on `nodes`.
pub fn is_dominant_on(lam: &Coweight, nodes: NodeSet) -> bool {
    nodes.iter().all(|i| !lam.pairings[i].is_negative())
}

/// `pr_P(λ)` with its kernel spanned by the coroots on `gamma_m`; returns the
/// projection and the coefficients `c` with `λ = pr_P(λ) + Σ c_j α_j`.
pub fn project_with_coefficients(g: &GroupData, gamma_m: NodeSet, lam: &Coweight) -> (Coweight, Vec<Rational>) {
    let block = g.cartan_block(gamma_m, gamma_m);
    let rhs: Vec<Rational> = gamma_m.iter().map(|i| lam.pairings[i].clone()).collect();
    let coefs = linalg::solve(&block, &rhs).expect("principal Cartan submatrix is invertible");
    let neg: Vec<Rational> = coefs.iter().map(|c| -c).collect();
    (g.add_coroots(lam, gamma_m, &neg), coefs)
}

pub fn project(g: &GroupData, gamma_m: NodeSet, lam: &Coweight) -> Result<Coweight> {
    g.check(lam)?;
    Ok(project_with_coefficients(g, gamma_m, lam).0)
}

/// Position of a coweight relative to the face of the dominant cone cut out
/// by `Γ_M`; variants are ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceMembership {
    None,
    /// In `Λ_{G,P}^Q`: pairings vanish on `Γ_M`.
    Face,
    /// In `Λ_{G,P}^{+,Q}`: additionally dominant.
    DominantFace,
    /// In `Λ_{G,P}^{++,Q}`: additionally strictly positive off `Γ_M`.
    Regular,
}

pub fn face_membership(g: &GroupData, gamma_m: NodeSet, lam: &Coweight) -> Result<FaceMembership> {
    g.check(lam)?;
    if gamma_m.iter().any(|i| !lam.pairings[i].is_zero()) {
        return Ok(FaceMembership::None);
    }
    let off = gamma_m.complement(g.rank());
    Ok(if off.iter().all(|i| lam.pairings[i].is_positive()) {
        FaceMembership::Regular
    } else if is_dominant(lam) {
        FaceMembership::DominantFace
    } else {
        FaceMembership::Face
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn group(s: &str) -> GroupData {
        GroupData::from_spec_str(s).unwrap()
    }

    #[test]
    fn leq_examples() {
        let a2 = group("A2");
        let a1 = a2.simple_coroot(0);
        let a12 = &a1 + &a2.simple_coroot(1);
        let out = leq(&a2, a2.gamma(), &a1, &a12).unwrap();
        assert!(out.holds);
        assert_eq!(out.coefficients, Some(vec![int(0), int(1)]));

        let w1 = a2.fundamental_coweight(0);
        let w2 = a2.fundamental_coweight(1);
        let out = leq(&a2, a2.gamma(), &w1, &w2).unwrap();
        assert!(!out.holds);
        assert_eq!(out.coefficients, Some(vec![frac(-1, 3), frac(1, 3)]));

        let g = group("A1xA1");
        let x = Coweight::from_ints(&[1, 0], &[]);
        let out = leq(&g, NodeSet::from_indices([1]), &x, &x).unwrap();
        assert!(out.holds);
        assert_eq!(out.coefficients, Some(vec![int(0)]));
    }

    #[test]
    fn leq_dimension_mismatch() {
        let a2 = group("A2");
        let bad = Coweight::from_ints(&[1], &[]);
        assert!(leq(&a2, a2.gamma(), &bad, &a2.zero()).is_err());
    }

    #[test]
    fn leq_central_mismatch() {
        let g = group("A1+Z1");
        let x = Coweight::from_ints(&[0], &[0]);
        let y = Coweight::from_ints(&[0], &[1]);
        assert!(!leq(&g, g.gamma(), &x, &y).unwrap().holds);
        assert!(leq(&g, g.gamma(), &x, &y).unwrap().coefficients.is_none());
    }

    #[test]
    fn leq_restricted_residual() {
        // α₂ − 0 is not in the span of α₁.
        let a2 = group("A2");
        let out = leq(&a2, NodeSet::from_indices([0]), &a2.zero(), &a2.simple_coroot(1)).unwrap();
        assert!(!out.holds);
        assert!(out.coefficients.is_none());
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&Coweight::from_ints(&[1, 0, 0], &[])));
        assert!(!is_dominant(&Coweight::from_ints(&[1, -1], &[])));
        assert!(is_dominant(&Coweight::from_ints(&[0, 0], &[-3])));
    }

    #[test]
    fn projector_examples() {
        let a2 = group("A2");
        let m = NodeSet::from_indices([0]);
        let w1 = a2.fundamental_coweight(0);
        let p = project(&a2, m, &w1).unwrap();
        assert_eq!(p.pairings, vec![int(0), frac(1, 2)]);
        assert_eq!(project(&a2, NodeSet::empty(), &w1).unwrap(), w1);
        assert_eq!(project(&a2, m, &p).unwrap(), p);
    }

    #[test]
    fn faces() {
        let a2 = group("A2");
        let m = NodeSet::from_indices([0]);
        let p = Coweight::new(vec![int(0), frac(1, 2)], vec![]);
        assert_eq!(face_membership(&a2, m, &p).unwrap(), FaceMembership::Regular);
        assert_eq!(face_membership(&a2, a2.gamma(), &a2.zero()).unwrap(), FaceMembership::Regular);
        let x = Coweight::from_ints(&[1, 0], &[]);
        assert_eq!(face_membership(&a2, m, &x).unwrap(), FaceMembership::None);
        let y = Coweight::from_ints(&[0, 0], &[]);
        assert_eq!(face_membership(&a2, m, &y).unwrap(), FaceMembership::DominantFace);
        let z = Coweight::from_ints(&[0, -1], &[]);
        assert_eq!(face_membership(&a2, m, &z).unwrap(), FaceMembership::Face);
    }
}
