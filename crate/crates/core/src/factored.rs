//! Polynomials in `s = (s1, s2)` or in `λ` kept as products of linear forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::malgrange::XPoly;
use crate::poly::{rational_to_string, render_with};
use crate::scalars::ExactScalar;

pub const EXPAND_LIMIT: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BsVariable {
    /// Polynomials in `s1, s2` (variables 0 and 1).
    S,
    /// Polynomials in `λ` (variable 0).
    Lambda,
}

/// `l1*s1 + l2*s2 + a`, or `λ + a` when the variable is `λ` (then `l = [0, 0]`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFactor {
    pub l: [u64; 2],
    pub a: BigRational,
}

impl LinearFactor {
    pub fn lambda(a: BigRational) -> Self {
        LinearFactor { l: [0, 0], a }
    }

    pub fn s(l1: u64, l2: u64, a: BigRational) -> Self {
        LinearFactor { l: [l1, l2], a }
    }

    pub fn expand(&self, var: BsVariable) -> XPoly {
        let a = XPoly::constant(ExactScalar::from_rational(self.a.clone()));
        match var {
            BsVariable::Lambda => XPoly::var(0).add(&a),
            BsVariable::S => {
                let mut p = a;
                for (i, &li) in self.l.iter().enumerate() {
                    if li > 0 {
                        p = p.add(&XPoly::var(i).scale(&ExactScalar::int(li as i64)));
                    }
                }
                p
            }
        }
    }

    fn render(&self, var: BsVariable) -> String {
        let mut parts = Vec::new();
        match var {
            BsVariable::Lambda => parts.push("λ".to_string()),
            BsVariable::S => {
                for (i, &li) in self.l.iter().enumerate() {
                    match li {
                        0 => {}
                        1 => parts.push(format!("s{}", i + 1)),
                        _ => parts.push(format!("{}*s{}", li, i + 1)),
                    }
                }
            }
        }
        let mut out = parts.join(" + ");
        if !self.a.is_zero() || out.is_empty() {
            if out.is_empty() {
                out = rational_to_string(&self.a);
            } else if self.a.is_negative() {
                out = format!("{} - {}", out, rational_to_string(&-self.a.clone()));
            } else {
                out = format!("{} + {}", out, rational_to_string(&self.a));
            }
        }
        out
    }
}

/// `unit · ∏ factor^mult · residual`. The residual is `1` unless a
/// `λ`-polynomial has irrational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredBS {
    variable: BsVariable,
    unit: BigRational,
    factors: BTreeMap<LinearFactor, u32>,
    residual: XPoly,
}

impl FactoredBS {
    pub fn one(variable: BsVariable) -> Self {
        FactoredBS {
            variable,
            unit: BigRational::one(),
            factors: BTreeMap::new(),
            residual: XPoly::one(),
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (LinearFactor, u32)>>(variable: BsVariable, it: I) -> Self {
        let mut b = Self::one(variable);
        for (f, m) in it {
            b.push(f, m);
        }
        b
    }

    /// Factor a nonzero polynomial in `λ` over the rationals, splitting off
    /// all rational roots.
    pub fn from_lambda_poly(p: &XPoly) -> Option<Self> {
        let mut coeffs = dense_univariate(p)?;
        if coeffs.iter().all(|c| c.is_zero()) {
            return None;
        }
        let lc = coeffs.last().unwrap().clone();
        for c in coeffs.iter_mut() {
            *c = &*c / &lc;
        }
        let mut out = Self::one(BsVariable::Lambda);
        out.unit = lc;
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
            out.push(LinearFactor::lambda(BigRational::zero()), 1);
        }
        for r in rational_roots(&coeffs) {
            while coeffs.len() > 1 && eval(&coeffs, &r).is_zero() {
                coeffs = divide_linear(&coeffs, &r);
                out.push(LinearFactor::lambda(-r.clone()), 1);
            }
        }
        out.residual = XPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (vec![k as u32], ExactScalar::from_rational(c.clone()))),
        );
        Some(out)
    }

    pub fn variable(&self) -> BsVariable {
        self.variable
    }

    pub fn unit(&self) -> &BigRational {
        &self.unit
    }

    pub fn residual(&self) -> &XPoly {
        &self.residual
    }

    pub fn is_split(&self) -> bool {
        self.residual == XPoly::one()
    }

    pub fn push(&mut self, f: LinearFactor, mult: u32) {
        if mult == 0 {
            return;
        }
        if self.variable == BsVariable::S && f.l == [0, 0] {
            self.unit = &self.unit * num_traits::pow(f.a, mult as usize);
            return;
        }
        *self.factors.entry(f).or_insert(0) += mult;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.variable, other.variable, "factored polynomials in different variables");
        let mut out = self.clone();
        out.unit = &self.unit * &other.unit;
        for (f, &m) in &other.factors {
            out.push(f.clone(), m);
        }
        out.residual = self.residual.mul(&other.residual);
        out
    }

    /// Factors in increasing `(l1, l2, a)` order, with multiplicities.
    pub fn factors(&self) -> impl Iterator<Item = (&LinearFactor, u32)> {
        self.factors.iter().map(|(f, &m)| (f, m))
    }

    pub fn multiplicity(&self, f: &LinearFactor) -> u32 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum::<u32>() + self.residual.total_degree().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.unit.is_one() && (self.is_split() || self.residual.monic() == self.residual)
    }

    /// Roots of a split `λ`-polynomial with multiplicity, ascending.
    pub fn lambda_roots(&self) -> Option<Vec<BigRational>> {
        if self.variable != BsVariable::Lambda || !self.is_split() {
            return None;
        }
        let mut r: Vec<BigRational> = self
            .factors
            .iter()
            .flat_map(|(f, &m)| std::iter::repeat(-f.a.clone()).take(m as usize))
            .collect();
        r.sort();
        Some(r)
    }

    pub fn expand(&self) -> XPoly {
        let mut p = XPoly::constant(ExactScalar::from_rational(self.unit.clone()));
        for (f, &m) in &self.factors {
            p = p.mul(&f.expand(self.variable).pow(m));
        }
        p.mul(&self.residual)
    }

    /// `b(l1*s1 + l2*s2 - k)` for a split `λ`-polynomial `b`.
    pub fn substitute_direction(&self, l: (u64, u64), k: i64) -> Option<Self> {
        if self.variable != BsVariable::Lambda || !self.is_split() {
            return None;
        }
        let mut out = Self::one(BsVariable::S);
        out.unit = self.unit.clone();
        for (f, &m) in &self.factors {
            let a = &f.a - BigRational::from_integer(BigInt::from(k));
            out.push(LinearFactor::s(l.0, l.1, a), m);
        }
        Some(out)
    }

    /// `{"l":[l1,l2],"a":"..","mult":m}` entries, sorted by `(l1, l2, a)`.
    pub fn factor_json(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|(f, &m)| json!({"l": [f.l[0], f.l[1]], "a": rational_to_string(&f.a), "mult": m}))
                .collect(),
        )
    }

    /// The expanded form is included only up to degree [`EXPAND_LIMIT`].
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "factors": self.factor_json(),
            "unit": rational_to_string(&self.unit),
            "degree": self.degree(),
        });
        if self.degree() <= EXPAND_LIMIT {
            v["expanded"] = Value::String(render_poly(&self.expand(), self.variable));
        }
        if !self.is_split() {
            v["residual"] = Value::String(render_poly(&self.residual, self.variable));
        }
        if self.variable == BsVariable::Lambda {
            v["variable"] = Value::String("lambda".into());
        }
        v
    }
}

impl fmt::Display for FactoredBS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() {
            parts.push(rational_to_string(&self.unit));
        }
        for (fac, &m) in &self.factors {
            let base = format!("({})", fac.render(self.variable));
            parts.push(if m == 1 { base } else { format!("{}^{}", base, m) });
        }
        if !self.is_split() {
            parts.push(format!("({})", render_poly(&self.residual, self.variable)));
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Render a polynomial in `s1, s2` or in `λ`.
pub fn render_poly(p: &XPoly, var: BsVariable) -> String {
    match var {
        BsVariable::S => render_with(p, |i| format!("s{}", i + 1), |c| c.to_string()),
        BsVariable::Lambda => render_with(p, |_| "λ".to_string(), |c| c.to_string()),
    }
}

fn dense_univariate(p: &XPoly) -> Option<Vec<BigRational>> {
    if p.nvars() > 1 {
        return None;
    }
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (e, c) in p.terms() {
        let k = e.first().copied().unwrap_or(0) as usize;
        out[k] = c.as_rational()?;
    }
    Some(out)
}

fn eval(coeffs: &[BigRational], r: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * r + c)
}

/// Quotient by `λ - r` of a polynomial vanishing at `r`.
fn divide_linear(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = coeffs.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (1..=n).rev() {
        carry = &coeffs[k] + carry * r;
        q[k - 1] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// An integer bound on the absolute values of the roots.
fn root_bound(ints: &[BigInt]) -> BigInt {
    let n = ints.len() - 1;
    let an = ints[n].abs();
    let mut best = BigInt::zero();
    for k in 1..=n {
        let c = ints[n - k].abs();
        if c.is_zero() {
            continue;
        }
        let ratio = (&c + &an - 1u32) / &an;
        let mut r = ratio.nth_root(k as u32);
        if num_traits::pow(r.clone(), k) < ratio {
            r += 1;
        }
        best = best.max(r);
    }
    2 * best
}

/// Distinct rational roots of a polynomial with nonzero constant term,
/// by the rational root test on its primitive integer multiple.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    if coeffs.len() < 2 {
        return Vec::new();
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let a0 = ints[0].clone();
    if a0.is_zero() {
        return Vec::new();
    }
    let bound = root_bound(&ints);
    let mut out = Vec::new();
    for q in divisors(ints.last().unwrap()) {
        let top = &bound * &q;
        let mut p = BigInt::one();
        while p <= top {
            if (&a0 % &p).is_zero() && p.gcd(&q).is_one() {
                for sign in [-1, 1] {
                    let r = BigRational::new(&p * BigInt::from(sign), q.clone());
                    if eval(coeffs, &r).is_zero() {
                        out.push(r);
                    }
                }
            }
            p += 1;
        }
    }
    out.sort();
    out
}
