//! Exact rational feasibility of `{row·x = rhs} ∪ {row·x ≥ rhs}` by
//! Fourier–Motzkin elimination.
//!
//! Every derived inequality carries its multiplier vector over the original
//! constraints, so a contradiction `0 ≥ c > 0` yields a Farkas refutation
//! directly. Feasible systems are solved by back-substitution through the
//! stored elimination stages.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{common_denominator, dot, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub row: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational")]
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(row: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { row, rhs }
    }
}

/// Equalities `row·x = rhs` and inequalities `row·x ≥ rhs`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeProblem {
    pub dimension: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

impl ConeProblem {
    pub fn new(dimension: usize) -> Self {
        ConeProblem {
            dimension,
            ..Default::default()
        }
    }

    pub fn equal(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        assert_eq!(row.len(), self.dimension);
        self.equalities.push(Constraint::new(row, rhs));
        self
    }

    pub fn at_least(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        assert_eq!(row.len(), self.dimension);
        self.inequalities.push(Constraint::new(row, rhs));
        self
    }

    pub fn constraint_count(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.dimension
            && self.equalities.iter().all(|c| dot(&c.row, x) == c.rhs)
            && self.inequalities.iter().all(|c| dot(&c.row, x) >= c.rhs)
    }

    /// Checks `farkas` (equalities first, then inequalities): inequality
    /// multipliers nonnegative, combined row zero, combined rhs positive.
    pub fn refuted_by(&self, farkas: &[Rational]) -> bool {
        if farkas.len() != self.constraint_count() {
            return false;
        }
        let (eq_mult, ineq_mult) = farkas.split_at(self.equalities.len());
        if ineq_mult.iter().any(Signed::is_negative) {
            return false;
        }
        let mut row = vec![Rational::zero(); self.dimension];
        let mut rhs = Rational::zero();
        let all = self.equalities.iter().zip(eq_mult).chain(self.inequalities.iter().zip(ineq_mult));
        for (c, y) in all {
            for (acc, a) in row.iter_mut().zip(&c.row) {
                *acc += y * a;
            }
            rhs += y * &c.rhs;
        }
        row.iter().all(Zero::is_zero) && rhs.is_positive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Feasible {
        #[serde(with = "crate::rational::serde_rational_vec")]
        point: Vec<Rational>,
    },
    Infeasible {
        #[serde(with = "crate::rational::serde_rational_vec")]
        farkas: Vec<Rational>,
    },
}

impl Certificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Certificate::Feasible { .. })
    }

    /// Arithmetic check of the certificate against `problem`.
    pub fn verify(&self, problem: &ConeProblem) -> bool {
        match self {
            Certificate::Feasible { point } => problem.satisfied_by(point),
            Certificate::Infeasible { farkas } => problem.refuted_by(farkas),
        }
    }
}

#[derive(Clone, Debug)]
struct Derived {
    row: Vec<Rational>,
    rhs: Rational,
    mult: Vec<Rational>,
}

impl Derived {
    fn scale(&mut self, s: &Rational) {
        for v in self.row.iter_mut().chain(self.mult.iter_mut()) {
            *v *= s;
        }
        self.rhs *= s;
    }

    /// Scales so the first nonzero coefficient has absolute value 1.
    fn normalize(&mut self) {
        if let Some(lead) = self.row.iter().find(|x| !x.is_zero()) {
            let s = lead.abs().recip();
            self.scale(&s);
        }
    }

    fn is_constant(&self) -> bool {
        self.row.iter().all(Zero::is_zero)
    }
}

enum Reduced {
    Rows(Vec<Derived>),
    Contradiction(Vec<Rational>),
}

/// Drops trivial constant rows, detects contradictions, and keeps only the
/// strongest inequality among rows with the same normalized coefficients.
fn reduce(rows: Vec<Derived>) -> Reduced {
    let mut best: BTreeMap<Vec<Rational>, Derived> = BTreeMap::new();
    for mut d in rows {
        if d.is_constant() {
            if d.rhs.is_positive() {
                return Reduced::Contradiction(d.mult);
            }
            continue;
        }
        d.normalize();
        match best.get(&d.row) {
            Some(existing) if existing.rhs >= d.rhs => {}
            _ => {
                best.insert(d.row.clone(), d);
            }
        }
    }
    Reduced::Rows(best.into_values().collect())
}

fn pick_variable(rows: &[Derived], remaining: &[usize]) -> usize {
    *remaining
        .iter()
        .min_by_key(|&&v| {
            let pos = rows.iter().filter(|d| d.row[v].is_positive()).count();
            let neg = rows.iter().filter(|d| d.row[v].is_negative()).count();
            pos * neg
        })
        .expect("at least one variable remains")
}

fn eliminate(rows: &[Derived], v: usize) -> Vec<Derived> {
    let (pos, rest): (Vec<&Derived>, Vec<&Derived>) = rows.iter().partition(|d| d.row[v].is_positive());
    let (neg, zero): (Vec<&Derived>, Vec<&Derived>) = rest.into_iter().partition(|d| d.row[v].is_negative());
    let mut out: Vec<Derived> = zero.into_iter().cloned().collect();
    for p in &pos {
        for n in &neg {
            let (a, b) = (&p.row[v], -&n.row[v]);
            let combine = |x: &Rational, y: &Rational| &b * x + a * y;
            let mut row: Vec<Rational> = p.row.iter().zip(&n.row).map(|(x, y)| combine(x, y)).collect();
            row[v] = Rational::zero();
            out.push(Derived {
                row,
                rhs: combine(&p.rhs, &n.rhs),
                mult: p.mult.iter().zip(&n.mult).map(|(x, y)| combine(x, y)).collect(),
            });
        }
    }
    out
}

fn choose_value(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    let zero = Rational::zero();
    let fits = |x: &Rational| lo.as_ref().is_none_or(|l| l <= x) && hi.as_ref().is_none_or(|h| x <= h);
    if fits(&zero) {
        return zero;
    }
    match (lo, hi) {
        (Some(l), hi) if l.is_positive() => {
            let c = l.ceil();
            if hi.as_ref().is_none_or(|h| &c <= h) {
                c
            } else {
                l
            }
        }
        (lo, Some(h)) => {
            let f = h.floor();
            if lo.as_ref().is_none_or(|l| l <= &f) {
                f
            } else {
                h
            }
        }
        _ => unreachable!("0 fits when both bounds are absent"),
    }
}

/// Integral multipliers with no common factor (positive scaling only).
fn primitive(mult: Vec<Rational>) -> Vec<Rational> {
    let den = common_denominator(mult.iter());
    let nums: Vec<BigInt> = mult.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return nums.into_iter().map(Rational::from_integer).collect();
    }
    nums.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub fn cone_feasible(problem: &ConeProblem) -> Certificate {
    let n = problem.dimension;
    let m_eq = problem.equalities.len();
    let total = problem.constraint_count();
    let unit = |k: usize, sign: i64| {
        let mut v = vec![Rational::zero(); total];
        v[k] = Rational::from_integer(sign.into());
        v
    };

    let mut rows: Vec<Derived> = Vec::new();
    for (k, c) in problem.equalities.iter().enumerate() {
        rows.push(Derived { row: c.row.clone(), rhs: c.rhs.clone(), mult: unit(k, 1) });
        rows.push(Derived {
            row: c.row.iter().map(|x| -x).collect(),
            rhs: -&c.rhs,
            mult: unit(k, -1),
        });
    }
    for (k, c) in problem.inequalities.iter().enumerate() {
        rows.push(Derived { row: c.row.clone(), rhs: c.rhs.clone(), mult: unit(m_eq + k, 1) });
    }

    let mut stages: Vec<(usize, Vec<Derived>)> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut current = match reduce(rows) {
        Reduced::Rows(r) => r,
        Reduced::Contradiction(mult) => return Certificate::Infeasible { farkas: primitive(mult) },
    };
    while !remaining.is_empty() {
        let v = pick_variable(&current, &remaining);
        remaining.retain(|&x| x != v);
        let next = eliminate(&current, v);
        stages.push((v, std::mem::take(&mut current)));
        current = match reduce(next) {
            Reduced::Rows(r) => r,
            Reduced::Contradiction(mult) => return Certificate::Infeasible { farkas: primitive(mult) },
        };
    }

    let mut x = vec![Rational::zero(); n];
    for (v, system) in stages.iter().rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for d in system {
            let a = &d.row[*v];
            if a.is_zero() {
                continue;
            }
            let rest: Rational = d.row.iter().zip(&x).enumerate().filter(|(j, _)| j != v).map(|(_, (c, xv))| c * xv).sum();
            let bound = (&d.rhs - rest) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        x[*v] = choose_value(lo, hi);
    }
    debug_assert!(problem.satisfied_by(&x), "back-substituted point must satisfy the system");
    Certificate::Feasible { point: x }
}
