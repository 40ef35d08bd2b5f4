//! Property tests for the ring, morphism, verdict and report invariants.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualring_core::catalog::rings::{exterior, grassmannian, lagrangian, special_unitary, tensor_all};
use dualring_core::catalog::{certified_instances, exploratory_instances, partitions, unitary_part_lists, verdict_for_class};
use dualring_core::duality::{ideal_contains, is_divisible, is_nondegenerate, pairing, pairs_nontrivially_with_ideal};
use dualring_core::rational::{parse_rational, to_fraction_string};
use dualring_core::report::ReportDocument;
use dualring_core::{decide_nonvanishing, Element, FamilyInstance, FundamentalClass, GradedAlgebra, Limits, Rational};

fn rings() -> &'static Vec<Arc<GradedAlgebra>> {
    static RINGS: OnceLock<Vec<Arc<GradedAlgebra>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let l = Limits::default();
        let mut out = Vec::new();
        for g in 1..=4 {
            out.push(lagrangian(g, "sigma", &l).unwrap());
        }
        for (p, q) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
            out.push(grassmannian(p, q, "sigma", "tau", &l).unwrap());
        }
        for n in 2..=6 {
            out.push(special_unitary(n, &l).unwrap());
        }
        let a = lagrangian(2, "alpha", &l).unwrap();
        let b = grassmannian(1, 2, "beta_sigma", "beta_tau", &l).unwrap();
        let c = exterior(&[3, 5], &l).unwrap();
        out.push(tensor_all(&[a, b, c], &l).unwrap());
        out
    })
}

fn instances() -> &'static Vec<FamilyInstance> {
    static INSTANCES: OnceLock<Vec<FamilyInstance>> = OnceLock::new();
    INSTANCES.get_or_init(|| {
        let l = Limits::default();
        certified_instances()
            .into_iter()
            .chain(exploratory_instances())
            .filter(|p| p.build(&l).map(|i| i.dual_g.total_dimension() <= 256).unwrap_or(false))
            .map(|p| p.build(&l).unwrap())
            .collect()
    })
}

fn nonzero_degrees(alg: &GradedAlgebra) -> Vec<usize> {
    (0..=alg.top_degree()).filter(|d| alg.dim(*d) > 0).collect()
}

fn random_element(alg: &Arc<GradedAlgebra>, pick: usize, rng: &mut ChaCha8Rng) -> (usize, Element) {
    let degrees = nonzero_degrees(alg);
    let d = degrees[pick % degrees.len()];
    (d, Element::random_homogeneous(alg, d, rng))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=30).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

#[test]
fn every_catalog_ring_is_a_poincare_duality_algebra() {
    for inst in instances() {
        for alg in [&inst.dual_g, &inst.dual_h] {
            assert!(is_nondegenerate(alg), "{}", inst.params.label());
            let b = alg.poincare_polynomial();
            assert!(b.iter().eq(b.iter().rev()), "{} {b:?}", inst.params.label());
        }
    }
}

#[test]
fn exterior_generators_square_to_zero() {
    for n in 2..=7 {
        let alg = special_unitary(n, &Limits::default()).unwrap();
        assert_eq!(alg.total_dimension(), 1 << (n - 1));
        for g in alg.generators() {
            let e = Element::generator(&alg, &g.name).unwrap();
            assert!((&e * &e).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity(ring in 0usize..16, da in 0usize..64, db in 0usize..64, seed: u64) {
        let alg = &rings()[ring % rings().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d1, a) = random_element(alg, da, &mut rng);
        let (d2, b) = random_element(alg, db, &mut rng);
        let sign = if d1 * d2 % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
    }

    #[test]
    fn associativity(ring in 0usize..16, da in 0usize..64, db in 0usize..64, dc in 0usize..64, seed: u64) {
        let alg = &rings()[ring % rings().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, a) = random_element(alg, da, &mut rng);
        let (_, b) = random_element(alg, db, &mut rng);
        let (_, c) = random_element(alg, dc, &mut rng);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity_and_unit(ring in 0usize..16, da in 0usize..64, db in 0usize..64, seed: u64) {
        let alg = &rings()[ring % rings().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, a) = random_element(alg, da, &mut rng);
        let (d, b) = random_element(alg, db, &mut rng);
        let c = Element::random_homogeneous(alg, d, &mut rng);
        prop_assert_eq!(&a * &b.add(&c), (&a * &b).add(&(&a * &c)));
        prop_assert_eq!(&Element::one(alg) * &a, a);
    }

    #[test]
    fn divisibility_witness_is_exact(ring in 0usize..16, dg in 0usize..64, dw in 0usize..64, seed: u64, perturb: bool) {
        let alg = &rings()[ring % rings().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, g) = random_element(alg, dg, &mut rng);
        prop_assume!(!g.is_zero());
        let (_, w) = random_element(alg, dw, &mut rng);
        let mut v = &g * &w;
        if perturb {
            if let Some(d) = v.degree() {
                v = v.add(&Element::random_homogeneous(alg, d, &mut rng));
            }
        }
        match is_divisible(&v, &g).unwrap() {
            Some(q) => prop_assert_eq!(&g * &q, v),
            None => prop_assert!(perturb, "a product g*w must be divisible by g"),
        }
    }

    #[test]
    fn ideal_witness_round_trips(ring in 0usize..16, dv in 0usize..64, dg in 0usize..64, seed: u64) {
        let alg = &rings()[ring % rings().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, v) = random_element(alg, dv, &mut rng);
        let (_, g) = random_element(alg, dg, &mut rng);
        if let Some(u) = pairs_nontrivially_with_ideal(&v, std::slice::from_ref(&g)).unwrap() {
            prop_assert!(ideal_contains(&u, std::slice::from_ref(&g)).unwrap());
            prop_assert!(!pairing(&v, &u).unwrap().is_zero());
        }
    }

    #[test]
    fn restriction_is_multiplicative(inst in 0usize..64, da in 0usize..64, db in 0usize..64, seed: u64) {
        let inst = &instances()[inst % instances().len()];
        let src = &inst.dual_g;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, a) = random_element(src, da, &mut rng);
        let (_, b) = random_element(src, db, &mut rng);
        let f = &inst.restriction;
        prop_assert_eq!(f.apply(&(&a * &b)).unwrap(), &f.apply(&a).unwrap() * &f.apply(&b).unwrap());
        prop_assert_eq!(f.apply(&a.add(&b)).unwrap(), f.apply(&a).unwrap().add(&f.apply(&b).unwrap()));
    }

    #[test]
    fn gysin_scales_with_orientation(inst in 0usize..64, lambda in nonzero_rational()) {
        let inst = &instances()[inst % instances().len()];
        let f = &inst.restriction;
        let base = f.gysin_fundamental_class().unwrap();
        prop_assert!(f.satisfies_gysin_identity(&base.element, &base.target_top_value));
        let scaled = f.gysin_with_orientation(&(&base.target_top_value * &lambda)).unwrap();
        prop_assert_eq!(&scaled.element, &base.element.scale(&lambda));
        prop_assert!(f.satisfies_gysin_identity(&scaled.element, &scaled.target_top_value));
    }

    #[test]
    fn verdicts_are_invariant_under_rescaling(inst in 0usize..64, lambda in nonzero_rational()) {
        let inst = &instances()[inst % instances().len()];
        let base = decide_nonvanishing(inst).unwrap();
        let class = FundamentalClass {
            element: base.fundamental_class.element.scale(&lambda),
            degree: base.fundamental_class.degree,
            target_top_value: &base.fundamental_class.target_top_value * &lambda,
        };
        let again = verdict_for_class(inst, class).unwrap();
        prop_assert_eq!(again.nonvanishing, base.nonvanishing);
        prop_assert_eq!(again.witness.is_some(), base.witness.is_some());
        match (again.ghost, base.ghost) {
            (Some(a), Some(b)) => {
                prop_assert_eq!(a.is_ghost, b.is_ghost);
                prop_assert_eq!(a.not_compactly_supported, b.not_compactly_supported);
                prop_assert_eq!(a.levi_restriction_in_levi_kernel, b.levi_restriction_in_levi_kernel);
                prop_assert_eq!(a.levi_orthogonal_to_franke_ideal, b.levi_orthogonal_to_franke_ideal);
                prop_assert_eq!(a.divisible_by_alternative, b.divisible_by_alternative);
            }
            (None, None) => {}
            _ => prop_assert!(false, "ghost data appeared or vanished under rescaling"),
        }
    }

    #[test]
    fn fraction_strings_round_trip(r in rational()) {
        let s = to_fraction_string(&r);
        prop_assert!(s.contains('/'));
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn partitions_are_nonincreasing_and_complete(total in 1usize..12, max_parts in 1usize..6) {
        let all = partitions(total, max_parts);
        for p in &all {
            prop_assert_eq!(p.iter().sum::<usize>(), total);
            prop_assert!(p.len() <= max_parts);
            prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
        // Partitions into at most k parts, by the recurrence p(n, k) = p(n, k-1) + p(n-k, k).
        fn count(n: usize, k: usize) -> usize {
            if n == 0 { return 1; }
            if k == 0 { return 0; }
            count(n, k - 1) + if n >= k { count(n - k, k) } else { 0 }
        }
        prop_assert_eq!(all.len(), count(total, max_parts));
    }

    #[test]
    fn unitary_part_lists_respect_bounds(p in 1usize..4, extra in 0usize..3, exact: bool) {
        let q = p + extra;
        for parts in unitary_part_lists(p, q, p, exact) {
            prop_assert_eq!(parts.iter().map(|x| x.0).sum::<usize>(), p);
            let sq = parts.iter().map(|x| x.1).sum::<usize>();
            let within = if exact { sq == q } else { sq <= q };
            prop_assert!(within, "sum q_i = {} against q = {}", sq, q);
            prop_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_round_trip_through_json(inst in 0usize..64) {
        let inst = &instances()[inst % instances().len()];
        let verdict = decide_nonvanishing(inst).unwrap();
        let doc = ReportDocument::from_verdict(&inst.params, &verdict);
        let json = doc.to_json();
        prop_assert_eq!(ReportDocument::from_json(&json).unwrap(), doc.clone());
        prop_assert_eq!(doc.to_json(), json);
        let back = Element::from_strings(&inst.dual_g, &doc.fundamental_class).unwrap();
        prop_assert_eq!(back, verdict.fundamental_class.element);
    }
}
