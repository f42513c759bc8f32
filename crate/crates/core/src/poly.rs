//! Sparse commutative multivariate polynomials.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the derived
//! ordering on `Vec<u32>` is the lexicographic monomial order with the first
//! variable dominant and equal polynomials always have equal maps.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use num_rational::BigRational;

/// Coefficient ring operations needed by [`MPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Coefficients that form a field.
pub trait FieldCoeff: Coeff {
    /// `None` when `other` is zero.
    fn checked_div(&self, other: &Self) -> Option<Self>;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

impl FieldCoeff for BigRational {
    fn checked_div(&self, other: &Self) -> Option<Self> {
        if num_traits::Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
}

pub type Exps = Vec<u32>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> Exps {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &e)| e <= b.get(i).copied().unwrap_or(0))
}

fn exp_sub(b: &[u32], a: &[u32]) -> Exps {
    let v = (0..b.len())
        .map(|i| b[i] - a.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

/// A polynomial with coefficients in `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<C: Coeff> {
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> Default for MPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable with index `i` (zero based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, C::one());
        p
    }

    pub fn monomial(exps: Exps, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        let e = trim(exps);
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        let e = trim(exps.to_vec());
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Number of variables actually occurring (one past the highest index).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[])
    }

    /// Leading term in lex order (first variable dominant).
    pub fn lex_leading(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|e| e.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly::from_terms(self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))))
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &C) -> Self {
        MPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, v)| (exp_add(e, exps), v.mul(c))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(exp_add(e1, e2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        MPoly::from_terms(self.terms.iter().filter_map(|(e, c)| {
            let k = e.get(var).copied().unwrap_or(0);
            if k == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            Some((e2, c.mul(&C::from_int(k as i64))))
        }))
    }

    /// Substitute polynomials for variables (variables beyond `subs` stay).
    pub fn substitute(&self, subs: &[MPoly<C>]) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = match subs.get(i) {
                    Some(s) => s.pow(k),
                    None => {
                        let mut m = vec![0; i + 1];
                        m[i] = k;
                        MPoly::monomial(m, C::one())
                    }
                };
                t = t.mul(&factor);
            }
            r = r.add(&t);
        }
        r
    }

    /// Apply a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> MPoly<D> {
        MPoly::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Evaluate all variables.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let v = point.get(i).cloned().unwrap_or_else(C::zero);
                for _ in 0..k {
                    t = t.mul(&v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl<C: FieldCoeff> MPoly<C> {
    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dl_e, dl_c) = d.lex_leading()?;
        let (dl_e, dl_c) = (dl_e.clone(), dl_c.clone());
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((e, c)) = rem.lex_leading() {
            if !exp_divides(&dl_e, e) {
                return None;
            }
            let qe = exp_sub(e, &dl_e);
            let qc = c.checked_div(&dl_c)?;
            rem = rem.sub(&d.mul_monomial(&qe, &qc));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Scale so the lex-leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lex_leading() {
            Some((_, c)) => {
                let inv = C::one().checked_div(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }
}

impl MPoly<BigRational> {
    /// Greatest common divisor, normalized to be lex-monic (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        gcd_rec(self, other).monic()
    }
}

/// Split into coefficients of powers of variable `v` (the highest index variable).
fn coeffs_in_last(p: &MPoly<BigRational>, v: usize) -> Vec<MPoly<BigRational>> {
    let deg = p.degree_in(v) as usize;
    let mut out = vec![MPoly::zero(); deg + 1];
    for (e, c) in p.terms() {
        let k = e.get(v).copied().unwrap_or(0) as usize;
        let mut e2 = e.clone();
        if e2.len() > v {
            e2.truncate(v);
        }
        out[k].add_term(e2, c.clone());
    }
    out
}

fn from_coeffs_in_last(cs: &[MPoly<BigRational>], v: usize) -> MPoly<BigRational> {
    let mut r = MPoly::zero();
    for (k, c) in cs.iter().enumerate() {
        for (e, val) in c.terms() {
            let mut e2 = e.clone();
            e2.resize(v + 1, 0);
            e2[v] = k as u32;
            r.add_term(e2, val.clone());
        }
    }
    r
}

fn content_in_last(cs: &[MPoly<BigRational>]) -> MPoly<BigRational> {
    let mut g = MPoly::zero();
    for c in cs {
        g = gcd_rec(&g, c);
        if g.is_constant() && !g.is_zero() {
            return MPoly::one();
        }
    }
    g
}

fn gcd_rec(a: &MPoly<BigRational>, b: &MPoly<BigRational>) -> MPoly<BigRational> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let nv = a.nvars().max(b.nvars());
    if nv == 0 {
        return MPoly::one();
    }
    let v = nv - 1;
    let ca = coeffs_in_last(a, v);
    let cb = coeffs_in_last(b, v);
    let conta = content_in_last(&ca);
    let contb = content_in_last(&cb);
    let g_cont = gcd_rec(&conta, &contb);
    let mut pa = primitive(from_coeffs_in_last(&ca, v), &conta);
    let mut pb = primitive(from_coeffs_in_last(&cb, v), &contb);
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !pb.is_zero() {
        if pb.degree_in(v) == 0 {
            // pb is a nonzero element of the coefficient ring and primitive
            pa = MPoly::one();
            break;
        }
        let r = pseudo_rem(&pa, &pb, v);
        pa = pb;
        pb = if r.is_zero() {
            r
        } else {
            let cr = content_in_last(&coeffs_in_last(&r, v));
            integer_primitive(primitive(r, &cr))
        };
    }
    g_cont.mul(&pa)
}

/// Scale to integer coefficients with no common factor.
fn integer_primitive(p: MPoly<BigRational>) -> MPoly<BigRational> {
    let mut den = BigInt::from(1);
    let mut num = BigInt::from(0);
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num == BigInt::from(0) {
        return p;
    }
    p.scale(&BigRational::new(den, num))
}

fn primitive(p: MPoly<BigRational>, content: &MPoly<BigRational>) -> MPoly<BigRational> {
    if content.is_zero() || (content.is_constant() && content.constant_term().is_one()) {
        return p;
    }
    p.div_exact(content).expect("content divides polynomial")
}

fn pseudo_rem(a: &MPoly<BigRational>, b: &MPoly<BigRational>, v: usize) -> MPoly<BigRational> {
    let db = b.degree_in(v);
    let cb = coeffs_in_last(b, v);
    let lcb = cb[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let cr = coeffs_in_last(&r, v);
        let lcr = cr[dr as usize].clone();
        let mut shift = vec![0u32; v + 1];
        shift[v] = dr - db;
        let t = b.mul(&lcr).mul_monomial(&shift, &<BigRational as Coeff>::one());
        r = r.mul(&lcb).sub(&t);
    }
    r
}

/// Render with variable names produced by `name(i)`.
pub fn render_with<C: Coeff, F: Fn(usize) -> String, G: Fn(&C) -> String>(
    p: &MPoly<C>,
    name: F,
    coeff: G,
) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // highest total degree first, then lex
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| {
        let da: u32 = a.0.iter().sum();
        let db: u32 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    for (i, (e, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    name(j)
                } else {
                    format!("{}^{}", name(j), k)
                }
            })
            .collect();
        let cs = coeff(c);
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if !rest.starts_with('(') || cs.starts_with("-(") => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mono.is_empty() {
            out.push_str(&body);
        } else {
            if body != "1" {
                out.push_str(&body);
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    if num_traits::One::is_one(q.denom()) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
