//! Seeded random coweights.
//!
//! Coordinates are `k/d` with `k` uniform in `[-N, N]` and `d` drawn from
//! `{1, 2, 3, 4, 6}`, which covers the denominators produced by inverse
//! Cartan matrices in low rank.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{frac, Rational};
use crate::rootdata::{Coweight, GroupData, NodeSet};

pub const DEFAULT_NUMERATOR_BOUND: i64 = 12;
pub const DENOMINATORS: [i64; 5] = [1, 2, 3, 4, 6];

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    pub numerator_bound: i64,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            numerator_bound: DEFAULT_NUMERATOR_BOUND,
        }
    }
}

impl Sampler {
    pub fn new(numerator_bound: i64) -> Self {
        Sampler { numerator_bound }
    }

    pub fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        let n = self.numerator_bound;
        frac(rng.random_range(-n..=n), *DENOMINATORS.choose(rng).unwrap())
    }

    pub fn nonnegative<R: Rng>(&self, rng: &mut R) -> Rational {
        frac(rng.random_range(0..=self.numerator_bound), *DENOMINATORS.choose(rng).unwrap())
    }

    pub fn coweight<R: Rng>(&self, rng: &mut R, g: &GroupData) -> Coweight {
        Coweight::new(
            (0..g.rank()).map(|_| self.rational(rng)).collect(),
            (0..g.central_rank()).map(|_| self.rational(rng)).collect(),
        )
    }

    pub fn dominant<R: Rng>(&self, rng: &mut R, g: &GroupData) -> Coweight {
        Coweight::new(
            (0..g.rank()).map(|_| self.nonnegative(rng)).collect(),
            (0..g.central_rank()).map(|_| self.rational(rng)).collect(),
        )
    }

    /// Random coefficients `c ≥ 0` on `nodes` (zero with probability 1/3 each).
    pub fn cone_coefficients<R: Rng>(&self, rng: &mut R, nodes: NodeSet) -> Vec<Rational> {
        nodes
            .iter()
            .map(|_| {
                if rng.random_range(0..3) == 0 {
                    Rational::from_integer(0.into())
                } else {
                    self.nonnegative(rng)
                }
            })
            .collect()
    }

    /// `λ + Σ_{j∈nodes} c_j α_j` with random `c ≥ 0`, so that `λ ≤_M` the result.
    pub fn above<R: Rng>(&self, rng: &mut R, g: &GroupData, lam: &Coweight, nodes: NodeSet) -> Coweight {
        let c = self.cone_coefficients(rng, nodes);
        g.add_coroots(lam, nodes, &c)
    }

    /// `λ − Σ_{j∈nodes} c_j α_j` with random `c ≥ 0`.
    pub fn below<R: Rng>(&self, rng: &mut R, g: &GroupData, lam: &Coweight, nodes: NodeSet) -> Coweight {
        let c: Vec<Rational> = self.cone_coefficients(rng, nodes).into_iter().map(|x| -x).collect();
        g.add_coroots(lam, nodes, &c)
    }

    pub fn subset<R: Rng>(&self, rng: &mut R, rank: usize) -> NodeSet {
        NodeSet::from_bits(rng.random_range(0..(1u64 << rank)))
    }
}
