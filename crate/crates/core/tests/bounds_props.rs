use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;
use seshadri::abelian::{
    hyperelliptic_upper, ppas_exact, ppas_infeasibility_scan, ppav_closed_form, ppav_general_upper,
    scale_bounds,
};
use seshadri::surface::{
    certify_rank_one, default_alpha, verify_certificate, very_general_bounds, Bound, Provenance,
    SurfaceModel,
};
use seshadri::{canonicalize, isqrt, rad_cmp, Radical, Rational, SeshadriBounds};

fn model(l2: u64) -> SurfaceModel {
    SurfaceModel::rank_one(l2).unwrap()
}

proptest! {
    #[test]
    fn certificates_replay(l2 in 1u64..=1_000_000, frac in 0.0f64..=1.0) {
        let max_alpha = default_alpha(l2);
        let alpha = 1 + ((max_alpha - 1) as f64 * frac) as u64;
        let cert = certify_rank_one(&model(l2), alpha).unwrap();
        prop_assert_eq!(verify_certificate(&cert), Ok(true));
    }

    #[test]
    fn scaling_composes(
        p in 1i64..=10_000,
        q in 1i64..=10_000,
        d in 1u32..=4,
        s in 1u64..=50,
        t in 1u64..=50,
    ) {
        let value = canonicalize(Rational::new(p, q).unwrap(), d).unwrap();
        let b = Bound { value, provenance: Provenance::new("random") };
        let bounds = SeshadriBounds::new(b.clone(), b).unwrap();
        let twice = scale_bounds(&scale_bounds(&bounds, s).unwrap(), t).unwrap();
        let once = scale_bounds(&bounds, s * t).unwrap();
        prop_assert_eq!(&twice.lower().value, &once.lower().value);
        prop_assert_eq!(&twice.upper().value, &once.upper().value);
    }
}

#[test]
fn very_general_bounds_over_a_range() {
    let mut previous_lower = Radical::from(Rational::zero());
    for l2 in 1..=10_000u64 {
        let b = very_general_bounds(&model(l2)).unwrap();
        assert_ne!(
            rad_cmp(&b.lower().value, &b.upper().value),
            Ordering::Greater
        );
        let root = isqrt(&BigUint::from(l2));
        assert_eq!(b.exact(), &root * &root == BigUint::from(l2), "L^2 = {l2}");
        assert_ne!(rad_cmp(&b.lower().value, &previous_lower), Ordering::Less);
        previous_lower = b.lower().value.clone();
    }
}

#[test]
fn abelian_bounds_are_strict_and_reproduce_through_witnesses() {
    for g in 2..=16 {
        for r in [
            hyperelliptic_upper(g).unwrap(),
            ppav_general_upper(g).unwrap(),
        ] {
            assert_eq!(r.strictness, Ordering::Less, "g = {g}");
            assert!(r.recheck(), "g = {g}");
        }
        assert_eq!(
            ppav_general_upper(g).unwrap().value,
            ppav_closed_form(g).unwrap()
        );
    }
}

#[test]
fn three_routes_to_four_thirds() {
    let four_thirds = Radical::from(Rational::new(4, 3).unwrap());
    assert_eq!(ppav_general_upper(2).unwrap().value, four_thirds);
    assert_eq!(hyperelliptic_upper(2).unwrap().value, four_thirds);
    assert_eq!(Radical::from(ppas_exact().unwrap().value), four_thirds);
}

#[test]
fn surface_value_system_has_no_solutions_up_to_1000() {
    assert!(ppas_infeasibility_scan(1000).is_empty());
}
