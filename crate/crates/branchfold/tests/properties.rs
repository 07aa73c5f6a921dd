//! Randomized properties: polynomial arithmetic laws, cone structure of
//! invariant measures, propagation soundness, and diagram-move invariance.

use proptest::prelude::*;

use branchfold::knots::{
    alexander, figure_eight, rational_tangle, tangle_close, trefoil, with_kink, Laurent,
};
use branchfold::measures::{
    enumerate_measures, euler_functional, first_infeasible_curve, zero_set_propagation,
    InvariantMeasure,
};
use branchfold::models::build_rg;
use branchfold::branched::SectionId;

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(|t| Laurent::from_terms(&t))
}

proptest! {
    #[test]
    fn polynomial_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
        prop_assert_eq!(a.mul(&b).invert_variable(), a.invert_variable().mul(&b.invert_variable()));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let product = a.mul(&b);
        match product.div_exact(&b) {
            Some(q) => prop_assert_eq!(q, a.clone()),
            None => prop_assert!(false, "product not divisible by factor"),
        }
    }

    #[test]
    fn equivalence_ignores_units(a in laurent(), shift in -5i64..=5, negate in any::<bool>()) {
        let mut unit_multiple = a.shift(shift);
        if negate {
            unit_multiple = unit_multiple.neg();
        }
        prop_assert!(a.equivalent(&unit_multiple));
        prop_assert_eq!(a.is_zero(), unit_multiple.is_zero());
    }

    #[test]
    fn measure_cone_closed_under_scaling(pick in any::<prop::sample::Index>(), k in 1u64..=4) {
        let model = build_rg(1).unwrap();
        let bs = &model.surface;
        let cone = enumerate_measures(bs, 3, &[]);
        let w = &cone[pick.index(cone.len())];
        let mut scaled = InvariantMeasure::zero(bs);
        for _ in 0..k {
            scaled = scaled.add(w);
        }
        prop_assert!(first_infeasible_curve(bs, &scaled).is_none());
        let chi = euler_functional(bs);
        prop_assert_eq!(chi.evaluate(&scaled), k as i64 * chi.evaluate(w));
    }

    #[test]
    fn propagation_is_sound_for_any_seed_set(mask in 0usize..512) {
        let model = build_rg(1).unwrap();
        let bs = &model.surface;
        let seeds: Vec<SectionId> =
            (0..9).filter(|i| mask & (1 << i) != 0).map(SectionId).collect();
        let prop = zero_set_propagation(bs, &seeds);
        for m in enumerate_measures(bs, 2, &[]) {
            if seeds.iter().any(|s| m.weight(*s) != 0) {
                continue;
            }
            for z in &prop.zeros {
                prop_assert_eq!(m.weight(*z), 0, "forced zero violated at {}", bs.section(*z).name);
            }
        }
    }

    #[test]
    fn kink_insertion_preserves_the_polynomial(
        base in 0usize..2,
        label_pick in any::<prop::sample::Index>(),
        positive in any::<bool>(),
    ) {
        let pd = if base == 0 { trefoil() } else { figure_eight() };
        let label = label_pick.index(2 * pd.crossing_count()) as u64 + 1;
        let kinked = with_kink(&pd, label, if positive { 1 } else { -1 }).unwrap();
        prop_assert_eq!(kinked.crossing_count(), pd.crossing_count() + 1);
        prop_assert!(alexander(&kinked).unwrap().equivalent(&alexander(&pd).unwrap()));
    }

    #[test]
    fn odd_twist_closures_are_knots_with_unit_determinant(n in 1i64..=9, negate in any::<bool>()) {
        prop_assume!(n % 2 == 1);
        let twists = if negate { -n } else { n };
        let pd = tangle_close(&rational_tangle(twists), &rational_tangle(0)).unwrap();
        prop_assert_eq!(pd.crossing_count() as i64, n);
        let poly = alexander(&pd).unwrap();
        prop_assert!(poly.equivalent(&poly.invert_variable()));
        let at_one = poly.eval_one();
        prop_assert_eq!(at_one.magnitude(), &num_bigint::BigUint::from(1u32));
    }
}
