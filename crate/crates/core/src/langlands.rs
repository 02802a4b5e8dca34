//! The Langlands retraction onto the dominant cone and its `η`-shifted form.
//!
//! `retract(λ)` is the least dominant `μ` with `λ ≤_G μ`. It is found by
//! enumerating subsets `I ⊆ Γ_G`: for each, solve `A_II c = −λ_I` and accept
//! when `c ≥ 0` and `μ = λ + Σ_{i∈I} c_i α_i` is dominant. Every accepted
//! subset must produce the same `μ`; a second value is reported as an
//! invariant violation.

use serde::Serialize;

use crate::coneorder::{coroot_coefficients, is_dominant};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;
use crate::rootdata::{nonnegative, Coweight, GroupData, NodeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionResult {
    pub mu: Coweight,
    /// The subset used (first accepted in bitmask order; not necessarily minimal).
    pub support: NodeSet,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub coefficients: Vec<Rational>,
}

pub const MAX_RETRACT_RANK: usize = 20;

pub fn retract(g: &GroupData, lam: &Coweight) -> Result<RetractionResult> {
    g.check(lam)?;
    if g.rank() > MAX_RETRACT_RANK {
        return Err(Error::RankTooLarge {
            rank: g.rank(),
            limit: MAX_RETRACT_RANK,
        });
    }
    if is_dominant(lam) {
        return Ok(RetractionResult {
            mu: lam.clone(),
            support: NodeSet::empty(),
            coefficients: Vec::new(),
        });
    }
    let mut found: Option<RetractionResult> = None;
    for subset in NodeSet::all_subsets(g.rank()) {
        let block = g.cartan_block(subset, subset);
        let rhs: Vec<Rational> = subset.iter().map(|i| -&lam.pairings[i]).collect();
        let coefs = linalg::solve(&block, &rhs).expect("principal Cartan submatrix is invertible");
        if !nonnegative(&coefs) {
            continue;
        }
        let mu = g.add_coroots(lam, subset, &coefs);
        if !is_dominant(&mu) {
            continue;
        }
        match &found {
            None => {
                found = Some(RetractionResult {
                    mu,
                    support: subset,
                    coefficients: coefs,
                })
            }
            Some(first) if first.mu != mu => {
                return Err(Error::Invariant(format!(
                    "retraction of {lam} is not unique: {} (I = {}) vs {mu} (I = {subset})",
                    first.mu, first.support
                )));
            }
            Some(_) => {}
        }
    }
    found.ok_or_else(|| Error::Invariant(format!("no subset validates the retraction of {lam}")))
}

/// `λ ∈ 𝔏⁻¹(μ)`: `λ = μ − Σ_{i∈I_μ} d_i α_i` with `d ≥ 0`, `I_μ` the walls of `μ`.
pub fn fiber_contains(g: &GroupData, mu: &Coweight, lam: &Coweight) -> Result<bool> {
    g.check(mu)?;
    g.check(lam)?;
    if !is_dominant(mu) {
        return Err(Error::NotDominant {
            what: "mu",
            value: mu.to_string(),
        });
    }
    Ok(coroot_coefficients(g, mu.walls(), &(mu - lam)).is_some_and(|d| nonnegative(&d)))
}

/// `𝔏⁺_η(λ) = 𝔏(λ − η) + η` for dominant `η` and `λ`.
pub fn retract_shifted(g: &GroupData, eta: &Coweight, lam: &Coweight) -> Result<Coweight> {
    g.check(eta)?;
    g.check(lam)?;
    if !is_dominant(eta) {
        return Err(Error::NotDominant {
            what: "eta",
            value: eta.to_string(),
        });
    }
    if !is_dominant(lam) {
        return Err(Error::NotDominant {
            what: "lambda",
            value: lam.to_string(),
        });
    }
    Ok(&retract(g, &(lam - eta))?.mu + eta)
}

/// `λ − η` dominant, i.e. `λ ∈ η + Λ_G^{+,Q}`.
pub fn in_shifted_cone(eta: &Coweight, lam: &Coweight) -> bool {
    lam.pairings.iter().zip(&eta.pairings).all(|(x, e)| x >= e)
}
