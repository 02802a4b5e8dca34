use std::collections::BTreeSet;

use hnindex::coneorder::{
    cone_feasible, face_membership, is_dominant, leq_g, leq_holds, project, ConeProblem, FaceMembership,
};
use hnindex::langlands::{fiber_contains, in_shifted_cone, retract, retract_shifted};
use hnindex::linalg;
use hnindex::posettop::{classify_cone, Classification, SetDescription};
use hnindex::rational::{frac, int, Rational};
use hnindex::rootdata::{enumerate_roots, levi_roots, Coweight, GroupData, NodeSet, Root};
use hnindex::sampling::{rng_from_seed, Sampler};
use hnindex::strata::{enumerate_candidates, hn_parabolic, member, AdmissibleSet, StratumIndex};
use hnindex::vanishing::{minimal_constants, root_module, StrangenessTable};
use proptest::prelude::*;
use proptest::sample::select;
use num_traits::Signed;

const GROUPS: &[&str] = &["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA1", "A1xG2", "A2 ad", "A1+Z1", "B2+Z1"];

fn group(spec: &str) -> GroupData {
    GroupData::from_spec_str(spec).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, select(vec![1i64, 2, 3, 4, 6])).prop_map(|(n, d)| frac(n, d))
}

fn nonneg() -> impl Strategy<Value = Rational> {
    (0i64..=12, select(vec![1i64, 2, 3, 4, 6])).prop_map(|(n, d)| frac(n, d))
}

/// A group with `k` random coweights and `m` nonnegative coefficient vectors.
fn group_and_points(k: usize) -> impl Strategy<Value = (&'static str, Vec<Coweight>, Vec<Vec<Rational>>)> {
    select(GROUPS).prop_flat_map(move |spec| {
        let g = group(spec);
        let (r, z) = (g.rank(), g.central_rank());
        let cw = (prop::collection::vec(rational(), r), prop::collection::vec(rational(), z))
            .prop_map(|(p, c)| Coweight::new(p, c));
        (
            Just(spec),
            prop::collection::vec(cw, k),
            prop::collection::vec(prop::collection::vec(nonneg(), r), k),
        )
    })
}

fn dominant(lam: &Coweight) -> Coweight {
    Coweight::new(lam.pairings.iter().map(|x| x.abs()).collect(), lam.central.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leq_is_a_preorder((spec, pts, cs) in group_and_points(3), mask in 0u64..8) {
        let g = group(spec);
        let m = NodeSet::from_bits(mask & g.gamma().bits());
        let a = &pts[0];
        let b = g.add_coroots(a, g.gamma(), &cs[0]);
        let c = g.add_coroots(&b, g.gamma(), &cs[1]);
        prop_assert!(leq_holds(&g, m, a, a));
        prop_assert!(leq_g(&g, a, &b) && leq_g(&g, &b, &c) && leq_g(&g, a, &c));
        if leq_holds(&g, m, a, &pts[1]) && leq_holds(&g, m, &pts[1], &pts[2]) {
            prop_assert!(leq_holds(&g, m, a, &pts[2]));
        }
        if leq_g(&g, a, &pts[1]) && leq_g(&g, &pts[1], a) {
            prop_assert_eq!(a, &pts[1]);
        }
    }

    #[test]
    fn leq_matches_inverse_cartan((spec, pts, _) in group_and_points(2)) {
        // Independent formula: λ₁ ≤ λ₂ iff A⁻¹(λ₂ − λ₁) ≥ 0 with equal central parts.
        let g = group(spec);
        let d = &pts[1] - &pts[0];
        let inv = linalg::inverse(&g.cartan_block(g.gamma(), g.gamma())).unwrap();
        let c = linalg::mat_vec(&inv, &d.pairings);
        let expected = d.central.iter().all(|x| *x == int(0)) && c.iter().all(|x| *x >= int(0));
        prop_assert_eq!(leq_g(&g, &pts[0], &pts[1]), expected);
    }

    #[test]
    fn projector_is_linear_idempotent((spec, pts, _) in group_and_points(2), mask in 0u64..8, a in rational()) {
        let g = group(spec);
        let m = NodeSet::from_bits(mask & g.gamma().bits());
        let p0 = project(&g, m, &pts[0]).unwrap();
        prop_assert_eq!(project(&g, m, &p0).unwrap(), p0.clone());
        let combo = &pts[0].scale(&a) + &pts[1];
        let expected = &p0.scale(&a) + &project(&g, m, &pts[1]).unwrap();
        prop_assert_eq!(project(&g, m, &combo).unwrap(), expected);
        prop_assert!(m.iter().all(|i| p0.pairings[i] == int(0)));
        prop_assert_eq!(&p0.central, &pts[0].central);
    }

    #[test]
    fn retraction_properties((spec, pts, cs) in group_and_points(2)) {
        let g = group(spec);
        let lam = &pts[0];
        let mu = retract(&g, lam).unwrap().mu;
        prop_assert!(is_dominant(&mu) && leq_g(&g, lam, &mu));
        prop_assert_eq!(retract(&g, &mu).unwrap().mu, mu.clone());
        prop_assert!(fiber_contains(&g, &mu, lam).unwrap());
        let upper = g.add_coroots(lam, g.gamma(), &cs[0]);
        if is_dominant(&upper) {
            prop_assert!(leq_g(&g, &mu, &upper));
        }
        prop_assert!(leq_g(&g, &mu, &retract(&g, &upper).unwrap().mu));
        // Round trip from the other side.
        if fiber_contains(&g, &dominant(&pts[1]), lam).unwrap() {
            prop_assert_eq!(&mu, &dominant(&pts[1]));
        }
    }

    #[test]
    fn shifted_retraction_adjunction((spec, pts, _) in group_and_points(3)) {
        let g = group(spec);
        let eta = dominant(&pts[0]).scale(&frac(1, 3));
        let lam_prime = dominant(&pts[1]);
        let lam = &eta + &dominant(&pts[2]);
        let lam = Coweight::new(lam.pairings, lam_prime.central.clone());
        let eta = Coweight::new(eta.pairings, lam_prime.central.iter().map(|_| int(0)).collect());
        prop_assume!(in_shifted_cone(&eta, &lam));
        let left = leq_g(&g, &retract_shifted(&g, &eta, &lam_prime).unwrap(), &lam);
        prop_assert_eq!(left, leq_g(&g, &lam_prime, &lam));
    }

    #[test]
    fn unique_hn_parabolic((spec, pts, _) in group_and_points(1)) {
        let g = group(spec);
        let lam = dominant(&pts[0]);
        let hn = hn_parabolic(&g, &lam).unwrap();
        let regular: Vec<NodeSet> = NodeSet::all_subsets(g.rank())
            .filter(|m| face_membership(&g, *m, &lam).unwrap() == FaceMembership::Regular)
            .collect();
        prop_assert_eq!(regular, vec![hn]);
    }

    #[test]
    fn down_set_membership_is_definitional((spec, pts, _) in group_and_points(2), mask in 0u64..8) {
        let g = group(spec);
        let m = NodeSet::from_bits(mask & g.gamma().bits());
        let apex = dominant(&pts[0]);
        let s = AdmissibleSet::down_m(&g, m, apex.clone()).unwrap();
        for probe in [&pts[1], &dominant(&pts[1])] {
            prop_assert_eq!(
                member(&g, &s, probe).unwrap(),
                is_dominant(probe) && leq_holds(&g, m, probe, &apex)
            );
        }
    }

    #[test]
    fn certificates_verify(seed in 0u64..10_000) {
        let s = Sampler::new(3);
        let mut rng = rng_from_seed(seed);
        let d = 1 + (seed % 4) as usize;
        let mut p = ConeProblem::new(d);
        for k in 0..(2 + seed % 5) {
            let row = (0..d).map(|_| s.rational(&mut rng)).collect();
            if k % 4 == 3 {
                p.equal(row, s.rational(&mut rng));
            } else {
                p.at_least(row, s.rational(&mut rng));
            }
        }
        prop_assert!(cone_feasible(&p).verify(&p));
    }

    #[test]
    fn constants_are_monotone(spec in select(vec!["A2", "B2", "G2", "A3", "C3"]), genus in 0u32..4, vals in prop::collection::vec((0u64..64, 0usize..64, any::<bool>(), 0i64..6), 1..6)) {
        let g = group(spec);
        let r = g.rank();
        let roots: Vec<Root> = g.roots().to_vec();
        let mut small = StrangenessTable::zero(genus);
        let mut large = StrangenessTable::zero(genus);
        for (mask, k, dual, v) in vals {
            let levi = NodeSet::from_bits(mask & g.gamma().bits());
            let root = &roots[k % roots.len()];
            if root.support().is_subset(levi) || small.get(levi, root, dual) != int(0) {
                continue;
            }
            small.insert(&g, levi, root, dual, int(v)).unwrap();
            large.insert(&g, levi, root, dual, int(v + 1)).unwrap();
        }
        prop_assert!(small.dominated_by(&large));
        let (a, b) = (minimal_constants(&g, &small), minimal_constants(&g, &large));
        for i in 0..r {
            prop_assert!(a.c_prime[i] <= b.c_prime[i]);
            prop_assert!(a.c_double_prime[i] <= b.c_double_prime[i]);
        }
    }

    #[test]
    fn cone_classes_ignore_redundant_generators((spec, pts, cs) in group_and_points(2)) {
        let g = group(spec);
        let base = dominant(&pts[0]);
        let higher = g.add_coroots(&base, g.gamma(), &cs[0]);
        prop_assume!(is_dominant(&higher));
        let mut rng = rng_from_seed(1);
        let s = Sampler::default();
        let classify = |d: SetDescription, rng: &mut _| classify_cone(&g, &d, rng, &s).unwrap().class;
        // `higher` is redundant for the up-set; `base` for the down-set of `higher`.
        let up1 = classify(SetDescription::UpClosure(vec![base.clone()]), &mut rng);
        let up2 = classify(SetDescription::UpClosure(vec![base.clone(), higher.clone()]), &mut rng);
        prop_assert_eq!(up1, up2);
        let down1 = classify(SetDescription::DownClosure(vec![higher.clone()]), &mut rng);
        let down2 = classify(SetDescription::DownClosure(vec![higher, base]), &mut rng);
        prop_assert_eq!(down1, down2);
        prop_assert_eq!(down1, Classification::Open);
    }
}

#[test]
fn root_counts_match_closed_forms() {
    let cases: &[(&str, usize)] = &[
        ("A1", 2), ("A4", 20), ("A7", 56), ("B2", 8), ("B5", 50), ("C3", 18), ("C6", 72), ("D4", 24), ("D6", 60),
        ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240),
    ];
    for (spec, count) in cases {
        let g = group(spec);
        let roots = enumerate_roots(&g);
        assert_eq!(roots.len(), *count, "{spec}");
        assert!(roots.iter().all(|r| roots.contains(&r.negated())), "{spec}");
        let simple = roots.iter().filter(|r| r.height() == 1).count();
        assert_eq!(simple, g.rank(), "{spec}");
        assert_eq!(levi_roots(&g, g.gamma()).len(), roots.len());
    }
}

#[test]
fn levi_roots_are_monotone() {
    for spec in ["A3", "B3", "G2", "D4"] {
        let g = group(spec);
        for a in NodeSet::all_subsets(g.rank()) {
            for b in NodeSet::all_subsets(g.rank()) {
                if a.is_subset(b) {
                    let ra: BTreeSet<Root> = levi_roots(&g, a).into_iter().collect();
                    let rb: BTreeSet<Root> = levi_roots(&g, b).into_iter().collect();
                    assert!(ra.is_subset(&rb));
                }
            }
        }
    }
}

#[test]
fn root_modules_partition_the_complement() {
    for spec in ["A3", "B3", "C3", "G2", "F4"] {
        let g = group(spec);
        for levi in NodeSet::all_subsets(g.rank()) {
            let outside: Vec<&Root> = g.roots().iter().filter(|r| !r.support().is_subset(levi)).collect();
            let mut seen: BTreeSet<Root> = BTreeSet::new();
            for alpha in &outside {
                let module = root_module(&g, levi, alpha).unwrap();
                assert!(module.contains(alpha));
                for beta in &module.members {
                    let other = root_module(&g, levi, beta).unwrap();
                    let a: BTreeSet<&Root> = module.members.iter().collect();
                    let b: BTreeSet<&Root> = other.members.iter().collect();
                    assert_eq!(a, b, "{spec} {levi}");
                }
                seen.extend(module.members.iter().cloned());
            }
            assert_eq!(seen.len(), outside.len());
        }
    }
}

#[test]
fn candidate_sets_peel_off_theta() {
    // {θ} = C(θ) minus the union of C(θ′) over candidates θ′ ≠ θ.
    for (spec, theta) in [("A2", [2, 2]), ("A1xA1", [2, 4]), ("B2", [2, 2]), ("A2 ad", [1, 2])] {
        let g = group(spec);
        let theta = Coweight::from_ints(&theta, &[]);
        let all: BTreeSet<StratumIndex> = enumerate_candidates(&g, &theta).unwrap().into_iter().collect();
        let top = StratumIndex::new(&theta, hn_parabolic(&g, &theta).unwrap());
        assert!(all.contains(&top), "{spec}");
        let mut union = BTreeSet::new();
        for c in &all {
            if c == &top {
                continue;
            }
            let below: BTreeSet<StratumIndex> = enumerate_candidates(&g, &c.coweight()).unwrap().into_iter().collect();
            assert!(below.is_subset(&all));
            union.extend(below);
        }
        let rest: Vec<&StratumIndex> = all.difference(&union).collect();
        assert_eq!(rest, vec![&top], "{spec}");
    }
}

proptest! {
    #[test]
    fn coweight_text_round_trip((spec, pts, _) in group_and_points(1)) {
        let g = group(spec);
        let lam = &pts[0];
        prop_assert_eq!(&g.parse_coweight(&lam.to_string()).unwrap(), lam);
        let json = serde_json::to_string(lam).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Coweight>(&json).unwrap(), lam);
    }
}
