//! Index-level reduction theory: admissible subsets of the dominant cone,
//! the covering used for the co-truncativeness criterion, emptiness
//! certificates, `η`-strata and enumeration of Harder–Narasimhan candidates.
//!
//! Admissible sets are always one of three finitely described shapes; each
//! is parametrized as `base ± Σ_{j∈nodes} c_j α_j` intersected with the
//! dominant cone, which turns every exact question about the set into a
//! [`ConeProblem`].

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::coneorder::{
    cone_feasible, face_membership, is_dominant, leq_holds, project, Certificate, ConeProblem, FaceMembership,
};
use crate::error::{Error, Result};
use crate::langlands::in_shifted_cone;
use crate::linalg;
use crate::rational::{int, Rational};
use crate::rootdata::{Coweight, GroupData, NodeSet};
use crate::sampling::Sampler;

/// A canonical admissible-set candidate inside `Λ_G^{+,Q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibleSet {
    /// `{λ′ dominant | λ′ ≤_M apex}`.
    DownM {
        #[serde(rename = "gamma_M")]
        gamma_m: NodeSet,
        apex: Coweight,
    },
    /// `pr_P⁻¹(μ) ∩ Λ_G^{+,Q}`.
    Fiber {
        #[serde(rename = "gamma_M")]
        gamma_m: NodeSet,
        mu: Coweight,
    },
    /// `{μ}` with `μ ∈ Λ_{G,P}^{++,Q}`.
    Singleton {
        #[serde(rename = "gamma_M")]
        gamma_m: NodeSet,
        mu: Coweight,
    },
}

impl AdmissibleSet {
    pub fn down_m(g: &GroupData, gamma_m: NodeSet, apex: Coweight) -> Result<Self> {
        g.check(&apex)?;
        if !is_dominant(&apex) {
            return Err(Error::NotDominant {
                what: "apex",
                value: apex.to_string(),
            });
        }
        Ok(AdmissibleSet::DownM { gamma_m, apex })
    }

    pub fn fiber(g: &GroupData, gamma_m: NodeSet, mu: Coweight) -> Result<Self> {
        if face_membership(g, gamma_m, &mu)? == FaceMembership::None {
            return Err(Error::Precondition(format!("{mu} does not vanish on {gamma_m}")));
        }
        Ok(AdmissibleSet::Fiber { gamma_m, mu })
    }

    pub fn singleton(g: &GroupData, gamma_m: NodeSet, mu: Coweight) -> Result<Self> {
        if face_membership(g, gamma_m, &mu)? != FaceMembership::Regular {
            return Err(Error::Precondition(format!("{mu} is not regular in the face of {gamma_m}")));
        }
        Ok(AdmissibleSet::Singleton { gamma_m, mu })
    }

    pub fn gamma_m(&self) -> NodeSet {
        match self {
            AdmissibleSet::DownM { gamma_m, .. }
            | AdmissibleSet::Fiber { gamma_m, .. }
            | AdmissibleSet::Singleton { gamma_m, .. } => *gamma_m,
        }
    }

    fn param(&self) -> Param {
        match self {
            AdmissibleSet::DownM { gamma_m, apex } => Param {
                base: apex.clone(),
                nodes: *gamma_m,
                sign: -1,
                nonneg: true,
            },
            AdmissibleSet::Fiber { gamma_m, mu } => Param {
                base: mu.clone(),
                nodes: *gamma_m,
                sign: 1,
                nonneg: false,
            },
            AdmissibleSet::Singleton { mu, .. } => Param {
                base: mu.clone(),
                nodes: NodeSet::empty(),
                sign: 1,
                nonneg: true,
            },
        }
    }
}

/// `base + sign·Σ_{j∈nodes} c_j α_j`, with `c ≥ 0` when `nonneg`.
struct Param {
    base: Coweight,
    nodes: NodeSet,
    sign: i64,
    nonneg: bool,
}

impl Param {
    fn dim(&self) -> usize {
        self.nodes.len()
    }

    fn point(&self, g: &GroupData, c: &[Rational]) -> Coweight {
        let signed: Vec<Rational> = c.iter().map(|x| x * int(self.sign)).collect();
        g.add_coroots(&self.base, self.nodes, &signed)
    }

    /// `λ′_i = base_i + row·c`.
    fn pairing_row(&self, g: &GroupData, i: usize) -> Vec<Rational> {
        self.nodes.iter().map(|j| g.cartan_entry(i, j) * int(self.sign)).collect()
    }

    /// Parameter polyhedron: sign conditions on `c` plus dominance of `λ′(c)`.
    fn problem(&self, g: &GroupData) -> ConeProblem {
        let n = self.dim();
        let mut p = ConeProblem::new(n);
        if self.nonneg {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n];
                row[k] = int(1);
                p.at_least(row, Rational::zero());
            }
        }
        for i in 0..g.rank() {
            p.at_least(self.pairing_row(g, i), -&self.base.pairings[i]);
        }
        p
    }

    /// Tangent cone of the parameter polyhedron at `c = 0`.
    fn tangent_cone(&self, g: &GroupData) -> ConeProblem {
        let n = self.dim();
        let mut p = ConeProblem::new(n);
        if self.nonneg {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n];
                row[k] = int(1);
                p.at_least(row, Rational::zero());
            }
        }
        for i in 0..g.rank() {
            if self.base.pairings[i].is_zero() {
                p.at_least(self.pairing_row(g, i), Rational::zero());
            }
        }
        p
    }

    /// Largest `t ≤ 1` keeping `λ′(t·d)` dominant (valid for `d` in the tangent cone).
    fn step_length(&self, g: &GroupData, d: &[Rational]) -> Rational {
        let mut t = int(1);
        for i in 0..g.rank() {
            let rate: Rational = self.pairing_row(g, i).iter().zip(d).map(|(a, x)| a * x).sum();
            if rate.is_negative() && self.base.pairings[i].is_positive() {
                let limit = &self.base.pairings[i] / -rate;
                if limit < t {
                    t = limit;
                }
            }
        }
        t
    }
}

pub fn member(g: &GroupData, s: &AdmissibleSet, lam: &Coweight) -> Result<bool> {
    g.check(lam)?;
    Ok(match s {
        AdmissibleSet::DownM { gamma_m, apex } => is_dominant(lam) && leq_holds(g, *gamma_m, lam, apex),
        AdmissibleSet::Fiber { gamma_m, mu } => is_dominant(lam) && &project(g, *gamma_m, lam)? == mu,
        AdmissibleSet::Singleton { mu, .. } => lam == mu,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Decided by an exact feasibility computation.
    Exact,
    /// Reduced to a check at the apex of a `≤_M` down-set.
    ApexReduction,
    /// Follows from the shape of the set (containment of Levi subsets).
    Analytic,
    /// The set is empty.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Holds { method: Method },
    Violated { witness: Coweight },
    /// No analytic argument applies and falsification found nothing.
    Unproven { sampled: usize },
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Holds { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    #[serde(rename = "gamma_M")]
    pub gamma_m: NodeSet,
    pub projection_constant: Status,
    pub down_closed: Status,
    pub strictly_positive: Status,
    pub falsification_pairs: usize,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.projection_constant.holds() && self.down_closed.holds() && self.strictly_positive.holds()
    }

    /// First violated condition and its witness.
    pub fn violation(&self) -> Option<(&'static str, &Coweight)> {
        [
            ("projection_constant", &self.projection_constant),
            ("down_closed", &self.down_closed),
            ("strictly_positive", &self.strictly_positive),
        ]
        .into_iter()
        .find_map(|(name, st)| match st {
            Status::Violated { witness } => Some((name, witness)),
            _ => None,
        })
    }
}

/// `pr_P` constant on the set (parabolic given by `gamma_m`).
fn check_projection_constant(g: &GroupData, s: &AdmissibleSet, gamma_m: NodeSet) -> Status {
    let param = s.param();
    if param.nodes.is_subset(gamma_m) {
        return Status::Holds {
            method: Method::Analytic,
        };
    }
    let cone = param.tangent_cone(g);
    // Image of each direction under the linearized projection.
    let images: Vec<Coweight> = param
        .nodes
        .iter()
        .map(|j| project(g, gamma_m, &g.simple_coroot(j)).expect("dimensions agree"))
        .collect();
    for k in 0..g.rank() {
        let row: Vec<Rational> = images.iter().map(|im| &im.pairings[k] * int(param.sign)).collect();
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        for dir in [1, -1] {
            let mut p = cone.clone();
            p.at_least(row.iter().map(|a| a * int(dir)).collect(), int(1));
            if let Certificate::Feasible { point } = cone_feasible(&p) {
                let t = param.step_length(g, &point);
                let scaled: Vec<Rational> = point.iter().map(|x| x * &t).collect();
                return Status::Violated {
                    witness: param.point(g, &scaled),
                };
            }
        }
    }
    Status::Holds { method: Method::Exact }
}

/// Every member has `<λ′, α̌_i> > threshold` for `i ∉ gamma_m`.
fn check_strict_bound(g: &GroupData, s: &AdmissibleSet, gamma_m: NodeSet, threshold: &Rational) -> Status {
    let param = s.param();
    let off = gamma_m.complement(g.rank());
    if let AdmissibleSet::DownM { apex, .. } = s {
        if param.nodes.is_subset(gamma_m) {
            // λ′ ≤_M apex forces pairings off Γ_M to be at least the apex's.
            return match off.iter().find(|&i| &apex.pairings[i] <= threshold) {
                Some(_) => Status::Violated { witness: apex.clone() },
                None => Status::Holds {
                    method: Method::ApexReduction,
                },
            };
        }
    }
    let base_problem = param.problem(g);
    for i in off.iter() {
        let mut p = base_problem.clone();
        let row: Vec<Rational> = param.pairing_row(g, i).iter().map(|a| -a).collect();
        p.at_least(row, &param.base.pairings[i] - threshold);
        if let Certificate::Feasible { point } = cone_feasible(&p) {
            return Status::Violated {
                witness: param.point(g, &point),
            };
        }
    }
    Status::Holds { method: Method::Exact }
}

fn sample_member<R: Rng>(g: &GroupData, s: &AdmissibleSet, rng: &mut R, sampler: &Sampler) -> Option<Coweight> {
    let param = s.param();
    if !is_dominant(&param.base) {
        return None;
    }
    for _ in 0..8 {
        let c: Vec<Rational> = if param.nonneg {
            sampler.cone_coefficients(rng, param.nodes)
        } else {
            param.nodes.iter().map(|_| sampler.rational(rng)).collect()
        };
        let scale = Rational::new(1.into(), (1 + rng.random_range(0..4)).into());
        let c: Vec<Rational> = c.iter().map(|x| x * &scale).collect();
        let p = param.point(g, &c);
        if is_dominant(&p) {
            return Some(p);
        }
    }
    Some(param.base.clone())
}

fn is_empty_set(s: &AdmissibleSet) -> bool {
    !is_dominant(&s.param().base)
}

/// Checks the three admissibility conditions of `s` relative to the
/// parabolic on `gamma_m`, with `samples` random falsification pairs for
/// down-closedness.
pub fn check_admissible<R: Rng>(
    g: &GroupData,
    s: &AdmissibleSet,
    gamma_m: NodeSet,
    samples: usize,
    rng: &mut R,
    sampler: &Sampler,
) -> Result<AdmissibilityReport> {
    if !gamma_m.is_subset(g.gamma()) {
        return Err(Error::Precondition(format!("{gamma_m} is not a subset of the Dynkin vertices")));
    }
    if is_empty_set(s) {
        let vacuous = Status::Holds {
            method: Method::Vacuous,
        };
        return Ok(AdmissibilityReport {
            gamma_m,
            projection_constant: vacuous.clone(),
            down_closed: vacuous.clone(),
            strictly_positive: vacuous,
            falsification_pairs: 0,
        });
    }
    let projection_constant = check_projection_constant(g, s, gamma_m);
    let strictly_positive = check_strict_bound(g, s, gamma_m, &Rational::zero());

    let mut down_closed = None;
    for _ in 0..samples {
        let Some(lam1) = sample_member(g, s, rng, sampler) else { break };
        let lam2 = sampler.below(rng, g, &lam1, gamma_m);
        if is_dominant(&lam2) && !member(g, s, &lam2)? {
            down_closed = Some(Status::Violated { witness: lam2 });
            break;
        }
    }
    let down_closed = down_closed.unwrap_or(if gamma_m.is_subset(s.gamma_m()) {
        Status::Holds {
            method: Method::Analytic,
        }
    } else {
        Status::Unproven { sampled: samples }
    });

    Ok(AdmissibilityReport {
        gamma_m,
        projection_constant,
        down_closed,
        strictly_positive,
        falsification_pairs: samples,
    })
}

/// `Λ_{G,P}^{++}` stratum index of a dominant coweight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StratumIndex {
    #[serde(rename = "lambda", with = "crate::rational::serde_rational_vec")]
    pub pairings: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational_vec", skip_serializing_if = "Vec::is_empty")]
    pub central: Vec<Rational>,
    #[serde(rename = "gamma_M")]
    pub gamma_m: NodeSet,
}

impl StratumIndex {
    pub fn new(lam: &Coweight, gamma_m: NodeSet) -> Self {
        StratumIndex {
            pairings: lam.pairings.clone(),
            central: lam.central.clone(),
            gamma_m,
        }
    }

    pub fn coweight(&self) -> Coweight {
        Coweight::new(self.pairings.clone(), self.central.clone())
    }
}

fn require_dominant(what: &'static str, lam: &Coweight) -> Result<()> {
    if is_dominant(lam) {
        Ok(())
    } else {
        Err(Error::NotDominant {
            what,
            value: lam.to_string(),
        })
    }
}

/// The unique `Γ_M` with `λ ∈ Λ_{G,P}^{++,Q}`: the zero-pairing nodes.
pub fn hn_parabolic(g: &GroupData, lam: &Coweight) -> Result<NodeSet> {
    g.check(lam)?;
    require_dominant("lambda", lam)?;
    Ok(lam.walls())
}

pub fn threshold(genus: u32) -> Rational {
    int(2 * genus as i64 - 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covering {
    #[serde(rename = "gamma_M")]
    pub gamma_m: NodeSet,
    pub set: AdmissibleSet,
}

/// `Γ_M = {i : <λ, α̌_i> ≤ 2g−2}` and `S_λ = {λ′ dominant | λ′ ≤_M λ}`.
pub fn covering_set(g: &GroupData, genus: u32, lam: &Coweight) -> Result<Covering> {
    g.check(lam)?;
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    require_dominant("lambda", lam)?;
    let t = threshold(genus);
    let gamma_m = NodeSet::from_indices((0..g.rank()).filter(|&i| lam.pairings[i] <= t));
    Ok(Covering {
        gamma_m,
        set: AdmissibleSet::down_m(g, gamma_m, lam.clone())?,
    })
}

/// Every member of `s` pairs `> threshold` with the simple roots off `gamma_m`.
pub fn satisfies_threshold(g: &GroupData, s: &AdmissibleSet, gamma_m: NodeSet, threshold: &Rational) -> Status {
    if is_empty_set(s) {
        return Status::Holds {
            method: Method::Vacuous,
        };
    }
    check_strict_bound(g, s, gamma_m, threshold)
}

/// The system `{λ′ dominant, λ′ ≤_G θ, λ′ ≤_M λ}` in the coordinates of `λ′`.
pub fn intersection_problem(g: &GroupData, theta: &Coweight, lam: &Coweight, gamma_m: NodeSet) -> Result<ConeProblem> {
    g.check(theta)?;
    g.check(lam)?;
    let r = g.rank();
    let z = g.central_rank();
    let n = r + z;
    let inv = linalg::inverse(&g.cartan_block(g.gamma(), g.gamma())).expect("Cartan matrix is invertible");
    let mut p = ConeProblem::new(n);
    let unit = |k: usize| {
        let mut row = vec![Rational::zero(); n];
        row[k] = int(1);
        row
    };
    for i in 0..r {
        p.at_least(unit(i), Rational::zero());
    }
    // θ − λ′ = Σ c_k α_k with c = A⁻¹(θ − λ′) ≥ 0.
    for k in 0..r {
        let mut row = vec![Rational::zero(); n];
        for i in 0..r {
            row[i] = -&inv[k][i];
        }
        let rhs: Rational = -(0..r).map(|i| &inv[k][i] * &theta.pairings[i]).sum::<Rational>();
        p.at_least(row, rhs);
    }
    // λ − λ′ = Σ_{k∈Γ_M} d_k α_k.
    for k in 0..r {
        let mut row = vec![Rational::zero(); n];
        for i in 0..r {
            row[i] = inv[k][i].clone();
        }
        let rhs: Rational = (0..r).map(|i| &inv[k][i] * &lam.pairings[i]).sum();
        if gamma_m.contains(k) {
            p.at_least(row.iter().map(|a| -a).collect(), -rhs);
        } else {
            p.equal(row, rhs);
        }
    }
    for c in 0..z {
        p.equal(unit(r + c), theta.central[c].clone());
        p.equal(unit(r + c), lam.central[c].clone());
    }
    Ok(p)
}

/// Decides whether some dominant `λ′` satisfies `λ′ ≤_G θ` and `λ′ ≤_M λ`.
/// `Infeasible` certifies that the two index sets are disjoint.
pub fn empty_intersection(g: &GroupData, theta: &Coweight, lam: &Coweight, gamma_m: NodeSet) -> Result<Certificate> {
    g.check(theta)?;
    g.check(lam)?;
    require_dominant("theta", theta)?;
    require_dominant("lambda", lam)?;
    Ok(cone_feasible(&intersection_problem(g, theta, lam, gamma_m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverStage {
    Membership,
    Admissibility,
    Threshold,
    Emptiness,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverFailure {
    pub lambda: Coweight,
    pub stage: CoverStage,
    pub witness: Option<Coweight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<CoverFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct CoverOptions {
    pub samples: usize,
    /// Falsification pairs per sampled `λ` in the admissibility check.
    pub falsification_pairs: usize,
    pub sampler: Sampler,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            samples: 500,
            falsification_pairs: 4,
            sampler: Sampler::default(),
        }
    }
}

/// `<θ, α̌_i> ≥ 2g − 2` for every `i`.
pub fn check_depth(g: &GroupData, genus: u32, theta: &Coweight) -> Result<()> {
    g.check(theta)?;
    require_dominant("theta", theta)?;
    let t = threshold(genus);
    match (0..g.rank()).find(|&i| theta.pairings[i] < t) {
        Some(i) => Err(Error::ThetaTooShallow {
            index: i + 1,
            pairing: theta.pairings[i].to_string(),
            threshold: t.to_string(),
        }),
        None => Ok(()),
    }
}

/// Samples dominant `λ ≰_G θ` and checks the covering argument for each:
/// `λ ∈ S_λ`, `S_λ` admissible, the `2g−2` bound off `Γ_M`, and an
/// arithmetically verified emptiness certificate.
pub fn check_theorem_cover<R: Rng>(
    g: &GroupData,
    genus: u32,
    theta: &Coweight,
    options: &CoverOptions,
    rng: &mut R,
) -> Result<CoverReport> {
    check_depth(g, genus, theta)?;
    if genus == 0 {
        return Ok(CoverReport {
            checked: 0,
            skipped: 0,
            failures: Vec::new(),
            note: Some(Error::GenusZero.to_string()),
        });
    }
    let t = threshold(genus);
    let sampler = &options.sampler;
    let mut report = CoverReport {
        checked: 0,
        skipped: 0,
        failures: Vec::new(),
        note: None,
    };
    for _ in 0..options.samples {
        let mut lam = sampler.dominant(rng, g);
        if rng.random_range(0..4) != 0 {
            lam.central = theta.central.clone();
        }
        if leq_holds(g, g.gamma(), &lam, theta) {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let fail = |stage, witness| CoverFailure {
            lambda: lam.clone(),
            stage,
            witness,
        };
        let cover = covering_set(g, genus, &lam)?;
        if !member(g, &cover.set, &lam)? {
            report.failures.push(fail(CoverStage::Membership, None));
            continue;
        }
        let adm = check_admissible(g, &cover.set, cover.gamma_m, options.falsification_pairs, rng, sampler)?;
        if !adm.admissible() {
            report.failures.push(fail(CoverStage::Admissibility, adm.violation().map(|(_, w)| w.clone())));
            continue;
        }
        if let Status::Violated { witness } = satisfies_threshold(g, &cover.set, cover.gamma_m, &t) {
            report.failures.push(fail(CoverStage::Threshold, Some(witness)));
            continue;
        }
        let problem = intersection_problem(g, theta, &lam, cover.gamma_m)?;
        let cert = cone_feasible(&problem);
        match &cert {
            Certificate::Feasible { point } => {
                let witness = Coweight::new(point[..g.rank()].to_vec(), point[g.rank()..].to_vec());
                report.failures.push(fail(CoverStage::Emptiness, Some(witness)));
            }
            Certificate::Infeasible { .. } if !cert.verify(&problem) => {
                report.failures.push(fail(CoverStage::Certificate, None));
            }
            Certificate::Infeasible { .. } => {}
        }
    }
    Ok(report)
}

/// The `η`-stratum through `λ ∈ η + Λ_G^{+,Q}`: `Γ_M` is the zero set of
/// `λ − η` and the stratum is `T_λ = {λ′ dominant | λ′ ≤_M λ}`.
pub fn eta_stratum(g: &GroupData, eta: &Coweight, lam: &Coweight) -> Result<(StratumIndex, AdmissibleSet)> {
    g.check(eta)?;
    g.check(lam)?;
    require_dominant("eta", eta)?;
    if !in_shifted_cone(eta, lam) {
        return Err(Error::Precondition(format!("{lam} is not in {eta} + dominant cone")));
    }
    let gamma_m = (lam - eta).walls();
    Ok((StratumIndex::new(lam, gamma_m), AdmissibleSet::down_m(g, gamma_m, lam.clone())?))
}

pub const MAX_ENUMERATION_RANK: usize = 4;

/// Candidate HN indices `μ ≤_G θ`: for every `Γ_M`, the points of
/// `pr_P(Λ_G) ∩ Λ_{G,P}^{++,Q}` below `θ`. Sorted, deduplicated.
pub fn enumerate_candidates(g: &GroupData, theta: &Coweight) -> Result<Vec<StratumIndex>> {
    g.check(theta)?;
    require_dominant("theta", theta)?;
    if g.rank() > MAX_ENUMERATION_RANK {
        return Err(Error::RankTooLarge {
            rank: g.rank(),
            limit: MAX_ENUMERATION_RANK,
        });
    }
    let r = g.rank();
    let z = g.central_rank();
    let inv = linalg::inverse(&g.cartan_block(g.gamma(), g.gamma())).expect("Cartan matrix is invertible");
    // 0 ≤ μ_i and (A⁻¹μ)_i ≤ (A⁻¹θ)_i with A⁻¹ ≥ 0 give μ_i ≤ (A⁻¹θ)_i / (A⁻¹)_ii.
    let upper: Vec<Rational> = (0..r)
        .map(|i| {
            let top: Rational = (0..r).map(|k| &inv[i][k] * &theta.pairings[k]).sum();
            top / &inv[i][i]
        })
        .collect();

    let mut out = Vec::new();
    for gamma_m in NodeSet::all_subsets(r) {
        let free: Vec<usize> = gamma_m.complement(r).indices();
        let reduce = |c: &Coweight| -> Vec<Rational> {
            free.iter().map(|&i| c.pairings[i].clone()).chain(c.central.iter().cloned()).collect()
        };
        let dim = free.len() + z;
        let gens: Vec<Vec<Rational>> = g
            .lattice_basis()
            .iter()
            .map(|b| reduce(&project(g, gamma_m, b).expect("dimensions agree")))
            .collect();
        let basis = linalg::lattice_basis(&gens, dim);
        let bounds: Vec<(Rational, Rational)> = free
            .iter()
            .map(|&i| (Rational::zero(), upper[i].clone()))
            .chain(theta.central.iter().map(|c| (c.clone(), c.clone())))
            .collect();
        let mut coords = vec![Rational::zero(); dim];
        let mut found = Vec::new();
        walk_lattice(&basis, &bounds, 0, &mut coords, &mut found);
        for v in found {
            let mut mu = g.zero();
            for (k, &i) in free.iter().enumerate() {
                mu.pairings[i] = v[k].clone();
            }
            mu.central = v[free.len()..].to_vec();
            if face_membership(g, gamma_m, &mu)? == FaceMembership::Regular && leq_holds(g, g.gamma(), &mu, theta) {
                out.push(StratumIndex::new(&mu, gamma_m));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn pivot(row: &[Rational]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
}

/// Integer combinations of echelon `basis` rows whose pivot coordinates fall
/// in `bounds`; appends each resulting vector to `found`.
fn walk_lattice(
    basis: &[Vec<Rational>],
    bounds: &[(Rational, Rational)],
    k: usize,
    acc: &mut Vec<Rational>,
    found: &mut Vec<Vec<Rational>>,
) {
    if k == basis.len() {
        if acc.iter().zip(bounds).all(|(x, (lo, hi))| lo <= x && x <= hi) {
            found.push(acc.clone());
        }
        return;
    }
    let row = &basis[k];
    let p = pivot(row);
    let (lo, hi) = &bounds[p];
    let step = &row[p];
    let t_lo = ((lo - &acc[p]) / step).ceil().to_integer();
    let t_hi = ((hi - &acc[p]) / step).floor().to_integer();
    let mut t = t_lo;
    while t <= t_hi {
        let tq = Rational::from_integer(t.clone());
        for (a, b) in acc.iter_mut().zip(row) {
            *a += &tq * b;
        }
        walk_lattice(basis, bounds, k + 1, acc, found);
        for (a, b) in acc.iter_mut().zip(row) {
            *a -= &tq * b;
        }
        t += 1;
    }
}
