use super::*;
use crate::factored::LinearFactor;
use crate::malgrange::bs_membership;
use crate::scalars::ExactScalar;
use num_rational::BigRational;
use proptest::prelude::*;

fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

fn normal_crossing() -> PolyPair {
    PolyPair::pair(x(0), x(1)).unwrap()
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

#[test]
fn normal_crossing_product() {
    let r = bernstein_candidate(&normal_crossing(), true).unwrap();
    assert_eq!(r.rays, vec![(1, 0), (0, 1)]);
    assert_eq!(r.kappa, (0, 0));
    assert!(r.blocks.iter().all(|b| b.shifts == vec![0]));
    let expected = FactoredBS::from_factors(
        BsVariable::S,
        [(LinearFactor::s(1, 0, one()), 1), (LinearFactor::s(0, 1, one()), 1)],
    );
    assert_eq!(r.product, expected);
    assert_eq!(r.product.to_string(), "(s2 + 1)*(s1 + 1)");
    let v = r.verification.unwrap();
    assert!(v.member);
    assert_eq!(v.prefix, Some(2));
    assert_eq!(v.replayed, Some(true));
    let j = r.product.to_json();
    assert_eq!(j["factors"][0]["l"], serde_json::json!([0, 1]));
}

#[test]
fn dropping_a_trivial_factor_loses_membership() {
    let f = normal_crossing();
    for keep in [LinearFactor::s(1, 0, one()), LinearFactor::s(0, 1, one())] {
        let b = FactoredBS::from_factors(BsVariable::S, [(keep, 1)]);
        assert!(!bs_membership(&b.expand(), &f).unwrap().member);
    }
}

#[test]
fn prefix_certificate() {
    let f = normal_crossing();
    let oracle = MembershipOracle::new(&f).unwrap();
    let s1 = x(0).add(&XPoly::one());
    let s2 = x(1).add(&XPoly::one());
    let s3 = x(0).add(&x(1)).add(&XPoly::one());
    let r = oracle.contains_product(&[s3.clone(), s1.clone(), s2.clone(), s1.clone()]).unwrap();
    assert!(r.member);
    assert_eq!(r.prefix, Some(3));
    let cert = r.certificate.unwrap();
    assert!(product_check(&cert, &f).unwrap());
    let mut forged = cert.clone();
    forged.factors[0] = x(0).add(&x(1)).add(&XPoly::constant(ExactScalar::int(2)));
    assert!(!product_check(&forged, &f).unwrap());
    assert!(!oracle.contains_product(&[s3, s1]).unwrap().member);
}

proptest! {
    #[test]
    fn shift_count(l1 in 0u64..20, l2 in 0u64..20, k1 in 0u64..20, k2 in 0u64..20) {
        let r = shift_range((l1, l2), (k1, k2));
        prop_assert_eq!(r.len() as u64, l1 * k1 + l2 * k2 + l1 + l2);
        prop_assert!(r.iter().all(|&k| k <= 0));
        let lo = -((l1 * (k1 + 1) + l2 * (k2 + 1)) as i64);
        prop_assert!(r.iter().all(|&k| k > lo));
    }
}
