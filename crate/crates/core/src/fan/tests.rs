use super::*;
use crate::malgrange::XPoly;
use crate::scalars::ExactScalar;
use proptest::prelude::*;

fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

fn normal_crossing() -> PolyPair {
    PolyPair::pair(x(0), x(1)).unwrap()
}

/// Cheap, and not a normal crossing.
fn skewed() -> PolyPair {
    PolyPair::pair(x(0), x(0).add(&x(1).pow(2))).unwrap()
}

fn covers_quadrant(fan: &RestrictedFan) -> bool {
    let mut at = Rational64::from_integer(0);
    for c in &fan.cones {
        if c.cone.lower != at || !c.cone.is_full_dimensional() {
            return false;
        }
        at = c.cone.upper;
    }
    at == Rational64::from_integer(1)
}

#[test]
fn normal_crossing_is_one_cone() {
    let fan = restricted_fan(&normal_crossing()).unwrap();
    assert_eq!(fan.cones.len(), 1);
    assert_eq!(fan.cones[0].basis.len(), 4);
    assert_eq!(skeleton(&fan).unwrap(), vec![(1, 0), (0, 1)]);
    let k = kappa(&fan);
    assert_eq!(k.kappa, (0, 0));
    assert_eq!(k.rows.len(), 4);
    assert!(k.rows.iter().all(|r| r.difference == 0));
}

#[test]
fn boundary_rays_can_be_dropped() {
    let fan = restricted_fan_with(
        &normal_crossing(),
        &FanOptions {
            include_boundary: false,
            ..FanOptions::default()
        },
    )
    .unwrap();
    assert!(skeleton(&fan).unwrap().is_empty());
}

#[test]
fn empty_fan_has_no_skeleton() {
    let fan = RestrictedFan {
        cones: Vec::new(),
        include_boundary: true,
        explored: 0,
    };
    assert_eq!(skeleton(&fan).unwrap_err(), FanError::EmptyFan);
}

#[test]
fn only_pairs() {
    let f = PolyPair::new(vec![x(0)], Some(2)).unwrap();
    assert_eq!(restricted_fan(&f).unwrap_err(), FanError::NotPair(1));
}

#[test]
fn budget_is_enforced() {
    let opts = FanOptions {
        max_cones: 0,
        ..FanOptions::default()
    };
    assert_eq!(
        restricted_fan_with(&normal_crossing(), &opts).unwrap_err(),
        FanError::FanBudgetExceeded(0)
    );
}

#[test]
fn skewed_pair_covers_quadrant_in_both_orders() {
    let f = skewed();
    let fwd = restricted_fan(&f).unwrap();
    let rev = restricted_fan_with(
        &f,
        &FanOptions {
            reverse: true,
            ..FanOptions::default()
        },
    )
    .unwrap();
    assert!(covers_quadrant(&fwd));
    assert!(covers_quadrant(&rev));
    assert_eq!(skeleton(&fwd).unwrap(), skeleton(&rev).unwrap());
    assert_eq!(kappa(&fwd).kappa, kappa(&rev).kappa);
    let sk = skeleton(&fwd).unwrap();
    for w in sk.windows(2) {
        // increasing slope l2/l1
        assert!(w[0].1 * w[1].0 < w[1].1 * w[0].0);
    }
    for &(a, b) in &sk {
        assert_eq!(num_integer::gcd(a, b), 1);
    }
}

#[test]
fn json_shape() {
    let fan = restricted_fan(&normal_crossing()).unwrap();
    let j = fan.to_json();
    assert_eq!(j["skeleton"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(j["cones"].as_array().unwrap().len(), 1);
    assert_eq!(kappa(&fan).to_json()["kappa"], serde_json::json!([0, 0]));
}

fn marks_at(f: &PolyPair, l: (i64, i64)) -> Vec<crate::weyl::Mono> {
    let hgens = homogenized_ideal(&malgrange_ideal(f), &Budget::default()).unwrap();
    let mut m = l_basis(&hgens, &[l.0, l.1], &Budget::default()).unwrap().marks();
    m.sort();
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interior_directions_share_marks(p in 1i64..40, q in 1i64..40) {
        let f = skewed();
        let fan = restricted_fan(&f).unwrap();
        let t = tau_of((p, q));
        let c = fan.cone_of((p, q)).unwrap();
        prop_assume!(c.cone.lower < t && t < c.cone.upper);
        let mut w = c.basis.marks();
        w.sort();
        prop_assert_eq!(marks_at(&f, (p, q)), w);
        prop_assert!(c.cone.contains((p, q)));
    }
}

#[test]
fn constant_shift_does_not_matter() {
    // f2 = x2 + 1 is a unit near the origin but the global fan still exists.
    let one = XPoly::constant(ExactScalar::int(1));
    let f = PolyPair::pair(x(0), x(1).add(&one)).unwrap();
    let fan = restricted_fan(&f).unwrap();
    assert!(covers_quadrant(&fan));
}
