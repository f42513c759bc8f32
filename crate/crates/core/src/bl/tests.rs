use super::*;
use crate::factored::LinearFactor;
use num_rational::BigRational;

fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

fn normal_crossing() -> PolyPair {
    PolyPair::pair(x(0), x(1)).unwrap()
}

fn lam_plus(a: i64) -> FactoredBS {
    FactoredBS::from_factors(
        crate::factored::BsVariable::Lambda,
        [(LinearFactor::lambda(BigRational::from_integer(a.into())), 1)],
    )
}

#[test]
fn normal_crossing_directions() {
    let f = normal_crossing();
    assert_eq!(b_l(&f, &[1, 1]).unwrap().b, lam_plus(2));
    assert_eq!(b_l(&f, &[1, 0]).unwrap().b, lam_plus(1));
    assert_eq!(b_l(&f, &[0, 1]).unwrap().b, lam_plus(1));
    assert_eq!(b_l(&f, &[0, 0]).unwrap_err(), BlError::ZeroDirection);
}

#[test]
fn directions_are_made_primitive() {
    let f = normal_crossing();
    let r = b_l(&f, &[2, 2]).unwrap();
    assert_eq!(r.l, vec![1, 1]);
    assert_eq!(r.b, lam_plus(2));
    // Without normalization b_{2L}(λ) = b_L(λ/2), made monic.
    let raw = b_l_with(
        &f,
        &[2, 2],
        &BlOptions {
            normalize: false,
            ..BlOptions::default()
        },
    )
    .unwrap();
    assert_eq!(raw.b, lam_plus(4));
}

#[test]
fn oracle_examples() {
    let f = normal_crossing();
    assert_eq!(b_l_oracle(&f, &[1, 1], 3).unwrap(), OracleOutcome::Found(lam_plus(2)));
    assert_eq!(b_l_oracle(&f, &[0, 1], 3).unwrap(), OracleOutcome::Found(lam_plus(1)));
    assert_eq!(b_l_oracle(&f, &[1, 1], 0).unwrap(), OracleOutcome::NoneBelow(0));
}

#[test]
fn intermediate_ideals_are_kept() {
    let f = normal_crossing();
    let opts = BlOptions {
        keep_intermediate: true,
        ..BlOptions::default()
    };
    let r = b_l_with(&f, &[1, 0], &opts).unwrap();
    let im = r.intermediate.unwrap();
    assert!(im.i2.iter().all(|e| !e.uses(Generator::Dx(0)) && !e.uses(Generator::Dt(1))));
    assert!(im.i3.iter().all(|e| !e.uses(Generator::T(0)) && !e.uses(Generator::Dt(0))));
    assert_eq!(im.i4.len(), 1);
}

#[test]
fn local_strip_examples() {
    let sig = Arc::new(AlgebraSignature::weyl_xt(1, 1).unwrap().with_lambda(&[1]).unwrap());
    let g = |gen| WeylElement::generator(&sig, gen);
    let c = |v| WeylElement::constant(&sig, ExactScalar::int(v));
    let lam2 = g(Generator::Lambda).add(&c(2)).unwrap();
    let unit = c(1).add(&g(Generator::X(0))).unwrap();
    let i3 = vec![unit.mul(&lam2).unwrap()];
    let b = lam_plus(1).mul(&lam_plus(2));
    assert_eq!(local_strip(&b, &i3, &[Generator::X(0)]).unwrap(), lam_plus(2));
    assert_eq!(local_strip(&lam_plus(2), &i3, &[Generator::X(0)]).unwrap(), lam_plus(2));
    let one = FactoredBS::one(crate::factored::BsVariable::Lambda);
    assert_eq!(local_strip(&one, &i3, &[Generator::X(0)]).unwrap(), one);
}

#[test]
fn annihilation_and_minimality() {
    let f = normal_crossing();
    let gr = gr_l(&f, &[1, 1], &Budget::default()).unwrap();
    let sig = gr[0].signature().clone();
    let gb = buchberger_with(&gr, &TermOrder::grlex(&sig), &Budget::default()).unwrap();
    let two = XPoly::var(0).add(&XPoly::constant(ExactScalar::int(2)));
    assert!(annihilates(&gb, &[1, 1], &two).unwrap());
    assert!(!annihilates(&gb, &[1, 1], &XPoly::one()).unwrap());
}
