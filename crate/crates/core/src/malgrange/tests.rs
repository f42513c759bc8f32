use super::*;
use crate::groebner::buchberger;

fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

fn k(v: i64) -> XPoly {
    XPoly::constant(ExactScalar::int(v))
}

fn normal_crossing() -> PolyPair {
    PolyPair::pair(x(0), x(1)).unwrap()
}

fn s1p1() -> XPoly {
    x(0).add(&k(1))
}

fn s2p1() -> XPoly {
    x(1).add(&k(1))
}

#[test]
fn malgrange_ideal_normal_crossing() {
    let gens = malgrange_ideal(&normal_crossing());
    let r: Vec<String> = gens.iter().map(|g| g.render()).collect();
    assert_eq!(r, vec!["t1 - x1", "t2 - x2", "Dt1 + Dx1", "Dt2 + Dx2"]);
}

#[test]
fn malgrange_ideal_cusps() {
    let f1 = x(0).pow(2).add(&x(1).pow(3));
    let f2 = x(0).pow(3).add(&x(1).pow(2));
    let gens = malgrange_ideal(&PolyPair::pair(f1, f2).unwrap());
    let r: Vec<String> = gens.iter().map(|g| g.render()).collect();
    assert_eq!(r[0], "-x2^3 - x1^2 + t1");
    assert_eq!(r[2], "3*x1^2*Dt2 + 2*x1*Dt1 + Dx1");
    assert_eq!(r[3], "3*x2^2*Dt1 + 2*x2*Dt2 + Dx2");
}

#[test]
fn zero_component_is_rejected() {
    assert_eq!(
        PolyPair::pair(XPoly::zero(), x(1)).unwrap_err(),
        MalgrangeError::ZeroComponent(1)
    );
}

#[test]
fn annihilator_normal_crossing() {
    let f = normal_crossing();
    let ann = s_annihilator(&f).unwrap();
    let sig = ann[0].signature().clone();
    let g = |gen| WeylElement::generator(&sig, gen);
    let e1 = g(Generator::X(0)).mul(&g(Generator::Dx(0))).unwrap().sub(&g(Generator::S(0))).unwrap();
    let e2 = g(Generator::X(1)).mul(&g(Generator::Dx(1))).unwrap().sub(&g(Generator::S(1))).unwrap();
    let ord = TermOrder::grlex(&sig);
    let gb_ann = buchberger(&ann, &ord).unwrap();
    let gb_ref = buchberger(&[e1.clone(), e2.clone()], &ord).unwrap();
    assert!(gb_ann.contains(&e1).unwrap() && gb_ann.contains(&e2).unwrap());
    for a in &ann {
        assert!(gb_ref.contains(a).unwrap());
        assert!(!a.uses(Generator::Dt(0)));
    }
}

#[test]
fn annihilator_with_constant_component() {
    let f = PolyPair::pair(x(0), k(1)).unwrap();
    let ann = s_annihilator(&f).unwrap();
    let sig = ann[0].signature().clone();
    let g = |gen| WeylElement::generator(&sig, gen);
    let gb = buchberger(&ann, &TermOrder::grlex(&sig)).unwrap();
    let e1 = g(Generator::X(0)).mul(&g(Generator::Dx(0))).unwrap().sub(&g(Generator::S(0))).unwrap();
    assert!(gb.contains(&e1).unwrap());
    assert!(gb.contains(&g(Generator::Dx(1))).unwrap());
}

#[test]
fn membership_normal_crossing() {
    let f = normal_crossing();
    let b = s1p1().mul(&s2p1());
    let r = bs_membership(&b, &f).unwrap();
    assert!(r.member);
    let cert = r.certificate.unwrap();
    assert!(action_check(&cert, &f).unwrap());
    let sig = cert.operator.signature().clone();
    let d = WeylElement::generator(&sig, Generator::Dx(0))
        .mul(&WeylElement::generator(&sig, Generator::Dx(1)))
        .unwrap();
    let (n1, k1) = apply_to_power(&cert.operator, &f).unwrap();
    let (n2, k2) = apply_to_power(&d, &f).unwrap();
    assert_eq!(n1.mul(&f.product().pow(k2)), n2.mul(&f.product().pow(k1)));

    assert!(!bs_membership(&s1p1(), &f).unwrap().member);
    assert_eq!(bs_membership(&XPoly::zero(), &f).unwrap_err(), MalgrangeError::ZeroPolynomial);
}

#[test]
fn membership_constant_component() {
    let f = PolyPair::pair(x(0), k(1)).unwrap();
    let r = bs_membership(&s1p1(), &f).unwrap();
    assert!(r.member);
    assert!(action_check(&r.certificate.unwrap(), &f).unwrap());
}

#[test]
fn action_check_examples() {
    let f = normal_crossing();
    let sig = Arc::new(AlgebraSignature::d_s(2, 2).unwrap());
    let dx = |i| WeylElement::generator(&sig, Generator::Dx(i));
    let good = Certificate {
        b: s1p1().mul(&s2p1()),
        operator: dx(0).mul(&dx(1)).unwrap(),
        trace: Vec::new(),
        generators: Default::default(),
    };
    assert!(action_check(&good, &f).unwrap());
    let bad = Certificate {
        b: s1p1(),
        operator: dx(0),
        trace: Vec::new(),
        generators: Default::default(),
    };
    assert!(!action_check(&bad, &f).unwrap());
    // P = 1 against F: F f^s = f^{s+1}.
    assert!(replay(&WeylElement::one(&sig), f.product(), &f).unwrap());
    assert!(!replay(&WeylElement::one(&sig), &k(1), &f).unwrap());
    let wrong_sig = Certificate {
        b: k(1),
        operator: WeylElement::one(&Arc::new(AlgebraSignature::weyl_xt(2, 2).unwrap())),
        trace: Vec::new(),
        generators: Default::default(),
    };
    assert!(matches!(action_check(&wrong_sig, &f), Err(MalgrangeError::BadCertificate(_))));
}

#[test]
fn pole_components() {
    assert_eq!(normal_crossing().pole_components(), vec![0, 1]);
    let same = PolyPair::pair(x(0), x(0)).unwrap();
    assert!(same.pole_components().is_empty());
    let nested = PolyPair::pair(x(0), x(0).pow(2).mul(&x(1))).unwrap();
    assert_eq!(nested.pole_components(), vec![1]);
    assert_eq!(PolyPair::pair(x(0), k(1)).unwrap().pole_components(), vec![0]);
}

#[test]
fn obstruction_agrees_with_division() {
    let f = normal_crossing();
    let oracle = MembershipOracle::new(&f).unwrap();
    for b in [s1p1(), s2p1(), s1p1().pow(2), x(0).mul(&s2p1())] {
        let fast = oracle.contains(&b).unwrap();
        assert!(!fast.member && fast.obstruction.is_some());
        let slow = oracle.divide(&b).unwrap();
        assert!(!slow.member && slow.obstruction.is_none());
    }
    let b = s1p1().mul(&s2p1()).mul(&x(0));
    assert!(oracle.contains(&b).unwrap().member);
    let r = oracle.contains_product(&[s1p1(), x(0).add(&k(2))]).unwrap();
    assert_eq!(r.obstruction, Some(1));
    assert!(!oracle.divide_product(&[s1p1(), x(0).add(&k(2))]).unwrap().member);
}

#[test]
fn forged_trace_is_rejected() {
    let f = normal_crossing();
    let mut cert = bs_membership(&s1p1().mul(&s2p1()), &f).unwrap().certificate.unwrap();
    assert!(!cert.trace.is_empty());
    assert!(action_check(&cert, &f).unwrap());
    let mut wrong_b = cert.clone();
    wrong_b.b = s1p1().mul(&s2p1()).mul(&k(2));
    assert!(!action_check(&wrong_b, &f).unwrap());
    let sig = cert.operator.signature().clone();
    let (i, (g, _)) = cert.generators.iter().next().map(|(i, p)| (*i, p.clone())).unwrap();
    cert.generators.insert(i, (g, WeylElement::zero(&sig)));
    assert!(!action_check(&cert, &f).unwrap());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_s_poly() -> impl Strategy<Value = XPoly> {
        prop::collection::vec((-3i64..4, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
            ts.iter()
                .fold(XPoly::zero(), |acc, &(c, a, b)| acc.add(&XPoly::monomial(vec![a, b], ExactScalar::int(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn sound_monotone_and_divisible(q in arb_s_poly(), j in 0usize..2) {
            prop_assume!(!q.is_zero());
            let f = normal_crossing();
            let oracle = MembershipOracle::new(&f).unwrap();
            let b = s1p1().mul(&s2p1()).mul(&q);
            let r = oracle.contains(&b).unwrap();
            prop_assert!(r.member);
            prop_assert!(action_check(&r.certificate.unwrap(), &f).unwrap());
            let lin = if j == 0 { s1p1() } else { s2p1() };
            let quotient = b.div_exact(&lin).unwrap();
            if quotient.div_exact(&lin).is_none() {
                prop_assert!(!oracle.divide(&quotient).unwrap().member);
            }
        }
    }
}
