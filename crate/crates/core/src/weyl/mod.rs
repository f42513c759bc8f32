//! Weyl-type algebras: `D_{x,t}`, its homogenization, the `λ` extension and
//! `D<s, Dt>`, with exact normal-ordered arithmetic.

mod element;
mod mono;
mod signature;
mod weights;

use thiserror::Error;

pub use element::WeylElement;
#[allow(unused_imports)]
pub(crate) use element::render_precedence;
pub use mono::{mono_product, product_is_trivial, Mono};
pub use signature::{AlgebraSignature, Generator, MAX_VARS};
pub use weights::{dehomogenize, homogenize, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operands live in different signatures")]
    SignatureMismatch,
    #[error("zero element has no weight")]
    ZeroElement,
    #[error("generator {0} is not available in the target signature")]
    MissingGenerator(String),
    #[error("invalid signature: {0}")]
    BadSignature(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactScalar;
    use proptest::prelude::*;
    use std::sync::Arc;
    use Generator::*;

    fn xt() -> Arc<AlgebraSignature> {
        Arc::new(AlgebraSignature::weyl_xt(2, 2).unwrap())
    }

    fn g(sig: &Arc<AlgebraSignature>, gen: Generator) -> WeylElement {
        WeylElement::generator(sig, gen)
    }

    fn c(sig: &Arc<AlgebraSignature>, v: i64) -> WeylElement {
        WeylElement::constant(sig, ExactScalar::int(v))
    }

    #[test]
    fn dx_times_x() {
        let sig = xt();
        let lhs = g(&sig, Dx(0)).mul(&g(&sig, X(0))).unwrap();
        let rhs = g(&sig, X(0)).mul(&g(&sig, Dx(0))).unwrap().add(&c(&sig, 1)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.render(), "x1*Dx1 + 1");
    }

    #[test]
    fn dt_times_s() {
        let sig = Arc::new(AlgebraSignature::s_dt(2, 2).unwrap());
        let lhs = g(&sig, Dt(0)).mul(&g(&sig, S(0))).unwrap();
        let s_dt = g(&sig, S(0)).mul(&g(&sig, Dt(0))).unwrap();
        assert_eq!(lhs, s_dt.sub(&g(&sig, Dt(0))).unwrap());
    }

    #[test]
    fn euler_square() {
        let sig = xt();
        let e = g(&sig, X(0)).mul(&g(&sig, Dx(0))).unwrap();
        let sq = e.mul(&e).unwrap();
        let expected = g(&sig, X(0))
            .pow(2)
            .mul(&g(&sig, Dx(0)).pow(2))
            .unwrap()
            .add(&e)
            .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn bracket_table() {
        let sig = Arc::new(AlgebraSignature::weyl_xt(2, 2).unwrap().with_lambda(&[2, 3]).unwrap());
        let gens = sig.generators().to_vec();
        for &a in &gens {
            for &b in &gens {
                let br = g(&sig, a).bracket(&g(&sig, b)).unwrap();
                let expected = match (a, b) {
                    (Dx(i), X(k)) | (Dt(i), T(k)) if i == k => c(&sig, 1),
                    (X(i), Dx(k)) | (T(i), Dt(k)) if i == k => c(&sig, -1),
                    (T(j), Lambda) => g(&sig, T(j)).scale(&ExactScalar::int([2, 3][j])),
                    (Lambda, T(j)) => g(&sig, T(j)).scale(&ExactScalar::int(-[2, 3][j])),
                    (Dt(j), Lambda) => g(&sig, Dt(j)).scale(&ExactScalar::int(-[2, 3][j])),
                    (Lambda, Dt(j)) => g(&sig, Dt(j)).scale(&ExactScalar::int([2, 3][j])),
                    _ => WeylElement::zero(&sig),
                };
                assert_eq!(br, expected, "[{}, {}]", a, b);
                assert_eq!(br.is_zero(), sig.commutes(a, b));
            }
        }
    }

    #[test]
    fn homogenized_bracket_is_h_squared() {
        let sig = Arc::new(AlgebraSignature::weyl_xt(1, 1).unwrap().with_h().unwrap());
        let br = g(&sig, Dt(0)).bracket(&g(&sig, T(0))).unwrap();
        assert_eq!(br, g(&sig, H).pow(2));
    }

    #[test]
    fn homogenize_examples() {
        let sig = xt();
        let p = g(&sig, T(0)).sub(&g(&sig, X(0)).pow(2)).unwrap();
        let hp = homogenize(&p).unwrap();
        let hs = hp.signature().clone();
        let expected = g(&hs, H).mul(&g(&hs, T(0))).unwrap().sub(&g(&hs, X(0)).pow(2)).unwrap();
        assert_eq!(hp, expected);
        assert!(hp.is_homogeneous());
        assert_eq!(dehomogenize(&hp).unwrap(), p);

        let q = g(&sig, Dx(0)).add(&g(&sig, Dt(0))).unwrap();
        let hq = homogenize(&q).unwrap();
        assert_eq!(dehomogenize(&hq).unwrap(), q);
        assert_eq!(hq.len(), 2);
        assert!(hq.terms().iter().all(|(m, _)| m.get(hs.idx(H)) == 0));

        assert!(homogenize(&WeylElement::zero(&sig)).unwrap().is_zero());
    }

    #[test]
    fn dehomogenize_examples() {
        let hs = Arc::new(AlgebraSignature::weyl_xt(2, 2).unwrap().with_h().unwrap());
        let h = g(&hs, H);
        assert_eq!(dehomogenize(&h.pow(3)).unwrap(), c(&xt(), 1));
        let p = h.mul(&g(&hs, Dt(0))).unwrap().add(&h.pow(2).mul(&g(&hs, Dt(0))).unwrap()).unwrap();
        let sig = xt();
        assert_eq!(dehomogenize(&p).unwrap(), g(&sig, Dt(0)).scale(&ExactScalar::int(2)));
    }

    #[test]
    fn weight_examples() {
        let sig = xt();
        let alpha = WeightVector::alpha(&sig, &[3, 2]);
        let f = g(&sig, X(0)).pow(2).add(&g(&sig, X(1)).pow(3)).unwrap();
        assert_eq!(alpha.rho(&f), Ok(6));
        assert_eq!(alpha.rho(&g(&sig, X(0))), Ok(3));
        let v1 = WeightVector::v(&sig, 0);
        let p = g(&sig, Dt(0)).mul(&g(&sig, X(0))).unwrap().add(&g(&sig, T(0))).unwrap();
        assert_eq!(v1.ord(&p), Ok(1));
        assert_eq!(v1.ord(&WeylElement::zero(&sig)), Err(WeylError::ZeroElement));
        let init = v1.initial_part(&p).unwrap();
        assert_eq!(v1.ord(&init), v1.ord(&p));
        assert!(v1.is_homogeneous(&init));
    }

    #[test]
    fn signature_mismatch() {
        let a = c(&xt(), 1);
        let b = c(&Arc::new(AlgebraSignature::d_s(2, 2).unwrap()), 1);
        assert_eq!(a.mul(&b), Err(WeylError::SignatureMismatch));
    }

    fn arb_element(sig: Arc<AlgebraSignature>) -> impl Strategy<Value = WeylElement> {
        let nv = sig.nvars();
        prop::collection::vec(
            (prop::collection::vec(0u16..3, nv), -3i64..4),
            1..4,
        )
        .prop_map(move |terms| {
            let ts = terms
                .into_iter()
                .map(|(e, c)| (Mono::from_exps(&e), ExactScalar::int(c)))
                .collect();
            WeylElement::from_terms(&sig, ts)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn mul_is_associative(
            (a, b, c) in {
                let sig = Arc::new(AlgebraSignature::weyl_xt(1, 1).unwrap().with_lambda(&[2]).unwrap());
                (arb_element(sig.clone()), arb_element(sig.clone()), arb_element(sig))
            }
        ) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogenized_mul_is_associative(
            (a, b, c) in {
                let sig = Arc::new(AlgebraSignature::weyl_xt(1, 1).unwrap().with_h().unwrap());
                (arb_element(sig.clone()), arb_element(sig.clone()), arb_element(sig))
            }
        ) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn s_dt_mul_is_associative(
            (a, b, c) in {
                let sig = Arc::new(AlgebraSignature::s_dt(1, 1).unwrap());
                (arb_element(sig.clone()), arb_element(sig.clone()), arb_element(sig))
            }
        ) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn initial_part_keeps_order(
            a in arb_element(Arc::new(AlgebraSignature::weyl_xt(1, 2).unwrap())),
            l1 in 0i64..4,
            l2 in 0i64..4,
        ) {
            let sig = a.signature().clone();
            let w = WeightVector::v_l(&sig, &[l1, l2]);
            prop_assume!(!a.is_zero());
            let init = w.initial_part(&a).unwrap();
            prop_assert_eq!(w.ord(&init), w.ord(&a));
            prop_assert!(w.is_homogeneous(&init));
            prop_assert_eq!(w.initial_part(&init).unwrap(), init);
        }

        #[test]
        fn homogenize_roundtrip(a in arb_element(Arc::new(AlgebraSignature::weyl_xt(1, 1).unwrap()))) {
            let h = homogenize(&a).unwrap();
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(dehomogenize(&h).unwrap(), a);
        }
    }
}
