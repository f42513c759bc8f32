//! Exact coefficients: rationals and rational functions in parameters `y1..ym`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::poly::{rational_to_string, render_with, Coeff, FieldCoeff, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
}

/// Polynomials in the parameters, with rational coefficients.
pub type ParamPoly = MPoly<BigRational>;

/// A reduced fraction of parameter polynomials.
///
/// The numerator and denominator are coprime and the denominator is monic in
/// lex order, so two equal rational functions are structurally equal.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: ParamPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.lex_leading().map(|(_, c)| c.clone()).expect("nonzero");
        if !Coeff::is_one(&lc) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        RatFunc {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }
}

/// Exact scalar: an element of ℚ or of ℚ(y1, ..., ym).
///
/// Rationals whose numerator and denominator fit in an `i64` are kept
/// unboxed; every value has exactly one representation.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactScalar(Repr);

#[derive(Clone, PartialEq, Debug)]
enum Repr {
    /// Reduced, denominator positive.
    Small(i64, i64),
    /// Only for values that do not fit `Small`.
    Big(Box<BigRational>),
    /// Never constant.
    Func(Arc<RatFunc>),
}

fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn small_from_i128(n: i128, d: i128) -> ExactScalar {
    debug_assert!(d != 0);
    let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
    if n == 0 {
        return ExactScalar(Repr::Small(0, 1));
    }
    let g = if d == 1 { 1 } else { gcd_u128(n.unsigned_abs(), d as u128) as i128 };
    if g > 1 {
        n /= g;
        d /= g;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) if a != i64::MIN => ExactScalar(Repr::Small(a, b)),
        _ => ExactScalar(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a < u64::MAX as u128 && b < u64::MAX as u128 {
        return gcd_u(a as u64, b as u64) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn from_big(q: BigRational) -> ExactScalar {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
        if n != i64::MIN {
            return ExactScalar(Repr::Small(n, d));
        }
    }
    ExactScalar(Repr::Big(Box::new(q)))
}

fn to_big(n: i64, d: i64) -> BigRational {
    BigRational::new_raw(BigInt::from(n), BigInt::from(d))
}

impl ExactScalar {
    pub fn int(v: i64) -> Self {
        small_from_i128(v as i128, 1)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        small_from_i128(n as i128, d as i128)
    }

    /// The parameter `y_{i+1}`.
    pub fn param(i: usize) -> Self {
        ExactScalar(Repr::Func(Arc::new(RatFunc::from_poly(ParamPoly::var(i)))))
    }

    pub fn from_rational(q: BigRational) -> Self {
        from_big(q)
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        match f.as_rational() {
            Some(q) => from_big(q),
            None => ExactScalar(Repr::Func(Arc::new(f))),
        }
    }

    pub fn from_param_poly(p: ParamPoly) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Small(n, d) => Some(to_big(*n, *d)),
            Repr::Big(q) => Some((**q).clone()),
            Repr::Func(_) => None,
        }
    }

    /// The value as a machine fraction, when it is one.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self.0, Repr::Func(_))
    }

    fn to_ratfunc(&self) -> RatFunc {
        match &self.0 {
            Repr::Func(f) => (**f).clone(),
            _ => RatFunc::from_poly(ParamPoly::constant(self.as_rational().expect("rational"))),
        }
    }

    /// Number of parameters this scalar mentions (one past the highest index).
    pub fn nparams(&self) -> usize {
        match &self.0 {
            Repr::Func(f) => f.num.nvars().max(f.den.nvars()),
            _ => 0,
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if Coeff::is_zero(other) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => small_from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            (Repr::Func(_), _) | (_, Repr::Func(_)) => {
                let a = self.to_ratfunc();
                let b = other.to_ratfunc();
                Self::from_ratfunc(RatFunc::new(a.num.mul(&b.den), a.den.mul(&b.num))?)
            }
            _ => from_big(self.as_rational().unwrap() / other.as_rational().unwrap()),
        })
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::int(1).try_div(self)
    }

    /// Evaluate the parameters at a rational point.
    pub fn specialize(&self, point: &BTreeMap<usize, BigRational>) -> Result<BigRational, ScalarError> {
        match &self.0 {
            Repr::Func(f) => {
                let n = self.nparams();
                let pt: Vec<BigRational> = (0..n)
                    .map(|i| point.get(&i).cloned().unwrap_or_else(<BigRational as Coeff>::zero))
                    .collect();
                let d = f.den.eval(&pt);
                if Coeff::is_zero(&d) {
                    return Err(ScalarError::PoleAtPoint);
                }
                Ok(f.num.eval(&pt) / d)
            }
            _ => Ok(self.as_rational().expect("rational")),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(q) => **q < <BigRational as Coeff>::zero(),
            Repr::Func(_) => false,
        }
    }
}

fn lift2(a: &ExactScalar, b: &ExactScalar, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> ExactScalar {
    ExactScalar::from_ratfunc(op(&a.to_ratfunc(), &b.to_ratfunc()))
}

impl Coeff for ExactScalar {
    fn zero() -> Self {
        ExactScalar(Repr::Small(0, 1))
    }
    fn one() -> Self {
        ExactScalar(Repr::Small(1, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
    fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(v) if v != i64::MIN => ExactScalar(Repr::Small(v, 1)),
                _ => small_from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    small_from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    small_from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            (Repr::Func(_), _) | (_, Repr::Func(_)) => lift2(self, other, |a, b| {
                RatFunc::new(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
                    .expect("nonzero denominators")
            }),
            _ => from_big(self.as_rational().unwrap() + other.as_rational().unwrap()),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(v) if v != i64::MIN => ExactScalar(Repr::Small(v, 1)),
                _ => small_from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                small_from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Repr::Func(_), _) | (_, Repr::Func(_)) => lift2(self, other, |a, b| {
                RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den)).expect("nonzero denominators")
            }),
            _ => from_big(self.as_rational().unwrap() * other.as_rational().unwrap()),
        }
    }
    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) => ExactScalar(Repr::Small(-a, *b)),
            Repr::Big(q) => from_big(-(**q).clone()),
            Repr::Func(f) => ExactScalar(Repr::Func(Arc::new(RatFunc {
                num: f.num.neg(),
                den: f.den.clone(),
            }))),
        }
    }
    fn from_int(v: i64) -> Self {
        ExactScalar::int(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        from_big(BigRational::from_integer(v.clone()))
    }
}

impl FieldCoeff for ExactScalar {
    fn checked_div(&self, other: &Self) -> Option<Self> {
        self.try_div(other).ok()
    }
}

/// The four field operations, as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &ExactScalar, b: &ExactScalar, op: ArithOp) -> Result<ExactScalar, ScalarError> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.try_div(b),
    }
}

fn param_name(i: usize) -> String {
    format!("y{}", i + 1)
}

pub(crate) fn render_param_poly(p: &ParamPoly) -> String {
    render_with(p, param_name, rational_to_string)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, d) => {
                if *d == 1 {
                    write!(f, "{}", n)
                } else {
                    write!(f, "{}/{}", n, d)
                }
            }
            Repr::Big(q) => write!(f, "{}", rational_to_string(q)),
            Repr::Func(r) => {
                let num = render_param_poly(&r.num);
                if r.den.is_constant() {
                    write!(f, "({})", num)
                } else {
                    write!(f, "({})/({})", num, render_param_poly(&r.den))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: usize) -> ExactScalar {
        ExactScalar::param(i)
    }

    #[test]
    fn rational_sum() {
        let r = scalar_arith(&ExactScalar::ratio(1, 2), &ExactScalar::ratio(1, 3), ArithOp::Add).unwrap();
        assert_eq!(r, ExactScalar::ratio(5, 6));
    }

    #[test]
    fn rational_function_cancels() {
        let y1 = y(0);
        let a = y1.try_div(&y1.add(&ExactScalar::int(1))).unwrap();
        let b = y1.add(&ExactScalar::int(1));
        assert_eq!(a.mul(&b), y1);
    }

    #[test]
    fn divide_by_zero_is_error() {
        assert_eq!(
            scalar_arith(&ExactScalar::int(1), &ExactScalar::int(0), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn constant_functions_collapse_to_rationals() {
        let y1 = y(0);
        let r = y1.try_div(&y1).unwrap();
        assert_eq!(r, ExactScalar::int(1));
        assert!(r.is_rational());
    }

    #[test]
    fn specialize_examples() {
        let y1 = y(0);
        let mut pt = BTreeMap::new();
        pt.insert(0, BigRational::from_integer(3.into()));
        assert_eq!(y1.mul(&y1).specialize(&pt).unwrap(), BigRational::from_integer(9.into()));

        let f = ExactScalar::int(1).try_div(&y1.sub(&ExactScalar::int(1))).unwrap();
        let mut one = BTreeMap::new();
        one.insert(0, <BigRational as Coeff>::one());
        assert_eq!(f.specialize(&one), Err(ScalarError::PoleAtPoint));

        let g = y(0).add(&y(1)).try_div(&y(1)).unwrap();
        let mut pt2 = BTreeMap::new();
        pt2.insert(0, <BigRational as Coeff>::one());
        pt2.insert(1, BigRational::from_integer(2.into()));
        assert_eq!(
            g.specialize(&pt2).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn canonical_equality_of_fractions() {
        // (y1^2 - 1)/(y1 - 1) == y1 + 1
        let y1 = y(0);
        let a = y1.mul(&y1).sub(&ExactScalar::int(1)).try_div(&y1.sub(&ExactScalar::int(1))).unwrap();
        assert_eq!(a, y1.add(&ExactScalar::int(1)));
        // 2/(2 y2) == 1/y2
        let b = ExactScalar::int(2).try_div(&y(1).mul(&ExactScalar::int(2))).unwrap();
        let c = ExactScalar::int(1).try_div(&y(1)).unwrap();
        assert_eq!(b, c);
    }

    fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        let poly = prop::collection::vec((-4i64..5, 0usize..3, 0u32..3), 1..4).prop_map(|ts| {
            ts.iter().fold(ExactScalar::int(0), |acc, &(c, i, e)| {
                let mut t = ExactScalar::int(c);
                for _ in 0..e {
                    t = t.mul(&y(i % 2));
                }
                acc.add(&t)
            })
        });
        (poly.clone(), poly).prop_map(|(n, d)| n.try_div(&d).unwrap_or(n))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn specialize_is_multiplicative(a in arb_scalar(), b in arb_scalar(), p in -5i64..6, q in 1i64..6) {
            let mut pt = BTreeMap::new();
            pt.insert(0, BigRational::new(p.into(), q.into()));
            pt.insert(1, BigRational::new(q.into(), 7.into()));
            if let (Ok(sa), Ok(sb)) = (a.specialize(&pt), b.specialize(&pt)) {
                prop_assert_eq!(a.mul(&b).specialize(&pt).unwrap(), sa.clone() * sb.clone());
                prop_assert_eq!(a.add(&b).specialize(&pt).unwrap(), sa + sb);
            }
        }
    }
}
