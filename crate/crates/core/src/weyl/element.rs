use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::poly::Coeff;
use crate::scalars::ExactScalar;

use super::mono::{mono_product, Mono};
use super::signature::{AlgebraSignature, Generator};
use super::WeylError;

/// A finite combination of normal-ordered words.
///
/// Terms are kept sorted by descending exponent vector and never carry a zero
/// coefficient, so equality of elements is equality of term lists.
#[derive(Clone, PartialEq, Debug)]
pub struct WeylElement {
    sig: Arc<AlgebraSignature>,
    terms: Vec<(Mono, ExactScalar)>,
}

impl WeylElement {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        WeylElement {
            sig: sig.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(sig: &Arc<AlgebraSignature>, c: ExactScalar) -> Self {
        Self::from_terms(sig, vec![(Mono::ONE, c)])
    }

    pub fn one(sig: &Arc<AlgebraSignature>) -> Self {
        Self::constant(sig, ExactScalar::int(1))
    }

    pub fn generator(sig: &Arc<AlgebraSignature>, g: Generator) -> Self {
        Self::from_terms(sig, vec![(Mono::var(sig.idx(g)), ExactScalar::int(1))])
    }

    pub fn monomial(sig: &Arc<AlgebraSignature>, m: Mono, c: ExactScalar) -> Self {
        Self::from_terms(sig, vec![(m, c)])
    }

    /// Build from arbitrary terms; duplicates are combined and zeros dropped.
    pub fn from_terms(sig: &Arc<AlgebraSignature>, terms: Vec<(Mono, ExactScalar)>) -> Self {
        let mut map: HashMap<Mono, ExactScalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        WeylElement {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn signature(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn terms(&self) -> &[(Mono, ExactScalar)] {
        &self.terms
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

    pub fn coeff(&self, m: &Mono) -> ExactScalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(ExactScalar::zero)
    }

    fn check_sig(&self, other: &Self) -> Result<(), WeylError> {
        if self.sig != other.sig {
            return Err(WeylError::SignatureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_sig(other)?;
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(&self.sig, t))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        WeylElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }

    /// The normal-ordered product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_sig(other)?;
        let mut acc: HashMap<Mono, ExactScalar> = HashMap::new();
        let mut buf = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                buf.clear();
                mono_product(&self.sig, a, b, &mut buf);
                let c = ca.mul(cb);
                for (m, k) in buf.drain(..) {
                    let v = c.mul(&ExactScalar::from_bigint(&k));
                    match acc.get_mut(&m) {
                        Some(x) => *x = x.add(&v),
                        None => {
                            acc.insert(m, v);
                        }
                    }
                }
            }
        }
        Ok(Self::from_terms(&self.sig, acc.into_iter().collect()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(&self.sig);
        for _ in 0..k {
            r = r.mul(self).expect("same signature");
        }
        r
    }

    /// `[self, other] = self*other - other*self`.
    pub fn bracket(&self, other: &Self) -> Result<Self, WeylError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Total degree (every generator counts one); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Bitmask of generators that occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.sig.nvars()];
        for (m, _) in &self.terms {
            for (i, u) in used.iter_mut().enumerate() {
                if m.get(i) > 0 {
                    *u = true;
                }
            }
        }
        used
    }

    pub fn uses(&self, g: Generator) -> bool {
        match self.sig.index(g) {
            Some(i) => self.terms.iter().any(|(m, _)| m.get(i) > 0),
            None => false,
        }
    }

    /// Re-express in another signature containing every generator used here.
    pub fn map_to(&self, target: &Arc<AlgebraSignature>) -> Result<Self, WeylError> {
        let mut map = Vec::new();
        for (i, g) in self.sig.generators().iter().enumerate() {
            map.push((i, target.index(*g), *g));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut out = Mono::ONE;
            for &(i, j, g) in &map {
                let e = m.get(i);
                if e == 0 {
                    continue;
                }
                match j {
                    Some(j) => out.0[j] = e,
                    None => return Err(WeylError::MissingGenerator(g.to_string())),
                }
            }
            terms.push((out, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Coefficients rendered in a deterministic, human-friendly order: by total
    /// degree, then by the generator precedence `Dt > Dx > t > s > x > u > h > lam`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let prec = render_precedence(&self.sig);
        let mut terms: Vec<&(Mono, ExactScalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            b.0.degree().cmp(&a.0.degree()).then_with(|| {
                for &i in &prec {
                    let c = b.0.get(i).cmp(&a.0.get(i));
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&m.render(&self.sig));
            }
        }
        out
    }
}

pub(crate) fn render_precedence(sig: &AlgebraSignature) -> Vec<usize> {
    use Generator::*;
    let rank = |g: Generator| match g {
        Dt(j) => (0, j),
        Dx(i) => (1, i),
        T(j) => (2, j),
        S(j) => (3, j),
        X(i) => (4, i),
        Aux(k) => (5, k),
        H => (6, 0),
        Lambda => (7, 0),
    };
    let mut idx: Vec<usize> = (0..sig.nvars()).collect();
    idx.sort_by_key(|&i| rank(sig.generator(i)));
    idx
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
