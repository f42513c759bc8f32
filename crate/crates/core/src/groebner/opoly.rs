//! Polynomials with terms sorted by a fixed term order.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::poly::Coeff;
use crate::scalars::ExactScalar;
use crate::weyl::{mono_product, product_is_trivial, AlgebraSignature, Mono, WeylElement};

use super::order::{Key, TermOrder};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub mono: Mono,
    pub c: ExactScalar,
}

/// Terms in strictly descending order.
#[derive(Clone, Debug, Default)]
pub(crate) struct OPoly {
    pub terms: Vec<Term>,
}

impl OPoly {
    pub fn zero() -> Self {
        OPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn from_element(e: &WeylElement, ord: &TermOrder) -> Self {
        let mut terms: Vec<Term> = e
            .terms()
            .iter()
            .map(|(m, c)| Term {
                key: ord.key(m),
                mono: *m,
                c: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        OPoly { terms }
    }

    pub fn to_element(&self, sig: &std::sync::Arc<AlgebraSignature>) -> WeylElement {
        WeylElement::from_terms(sig, self.terms.iter().map(|t| (t.mono, t.c.clone())).collect())
    }

    pub fn monomial(ord: &TermOrder, m: Mono, c: ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OPoly {
            terms: vec![Term {
                key: ord.key(&m),
                mono: m,
                c,
            }],
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    key: t.key,
                    mono: t.mono,
                    c: t.c.mul(c),
                })
                .collect(),
        }
    }


    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// `c * m * self`, with `m` multiplied from the left.
    pub fn mul_left(&self, ord: &TermOrder, m: &Mono, c: &ExactScalar) -> Self {
        let sig = ord.signature();
        if m.is_one() {
            return self.scale(c);
        }
        if self.terms.iter().all(|t| product_is_trivial(sig, m, &t.mono)) {
            return OPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|t| {
                        let mono = m.mul(&t.mono);
                        Term {
                            key: ord.key(&mono),
                            mono,
                            c: t.c.mul(c),
                        }
                    })
                    .collect(),
            };
        }
        let mut acc: Vec<(Mono, ExactScalar)> = Vec::with_capacity(self.terms.len() * 2);
        let mut buf: Vec<(Mono, BigInt)> = Vec::new();
        for t in &self.terms {
            buf.clear();
            mono_product(sig, m, &t.mono, &mut buf);
            let ct = t.c.mul(c);
            for (mm, k) in buf.drain(..) {
                let v = if k == BigInt::from(1) {
                    ct.clone()
                } else {
                    ct.mul(&ExactScalar::from_bigint(&k))
                };
                acc.push((mm, v));
            }
        }
        Self::collect(ord, acc)
    }


    fn collect(ord: &TermOrder, terms: Vec<(Mono, ExactScalar)>) -> Self {
        let mut keyed: Vec<Term> = terms
            .into_iter()
            .map(|(m, c)| Term {
                key: ord.key(&m),
                mono: m,
                c,
            })
            .collect();
        keyed.sort_by(|a, b| b.key.cmp(&a.key));
        let mut out: Vec<Term> = Vec::with_capacity(keyed.len());
        for t in keyed {
            match out.last_mut() {
                Some(last) if last.key == t.key => last.c = last.c.add(&t.c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.c.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if let Some(last) = out.last() {
            if last.c.is_zero() {
                out.pop();
            }
        }
        OPoly { terms: out }
    }

    /// `self + other`.
    pub fn add(&self, other: &OPoly) -> Self {
        self.add_scaled(other, &ExactScalar::int(1))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &OPoly, c: &ExactScalar) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let one = c.is_one();
        while i < a.len() && j < b.len() {
            match a[i].key.cmp(&b[j].key) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = if one { b[j].c.clone() } else { b[j].c.mul(c) };
                    out.push(Term {
                        key: b[j].key,
                        mono: b[j].mono,
                        c: v,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = if one {
                        a[i].c.add(&b[j].c)
                    } else {
                        a[i].c.add(&b[j].c.mul(c))
                    };
                    if !v.is_zero() {
                        out.push(Term {
                            key: a[i].key,
                            mono: a[i].mono,
                            c: v,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let v = if one { t.c.clone() } else { t.c.mul(c) };
            out.push(Term {
                key: t.key,
                mono: t.mono,
                c: v,
            });
        }
        OPoly { terms: out }
    }


    /// Canonical comparison used to sort bases deterministically.
    pub fn canonical_cmp(&self, other: &OPoly) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let c = a.key.cmp(&b.key);
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

/// A sum of sorted polynomials kept in buckets of geometrically growing
/// length, so that adding a short polynomial to a long one is cheap.
/// Buckets hold their terms in ascending order.
#[derive(Default)]
pub(crate) struct GeoBucket {
    buckets: Vec<Vec<Term>>,
}

fn merge_ascending(a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.key.cmp(&y.key),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let mut x = a.next().unwrap();
                let y = b.next().unwrap();
                x.c = x.c.add(&y.c);
                if !x.c.is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

impl GeoBucket {
    pub fn new() -> Self {
        GeoBucket { buckets: Vec::new() }
    }

    pub fn from_poly(p: OPoly) -> Self {
        let mut b = Self::new();
        b.add(p.terms);
        b
    }

    fn cap(k: usize) -> usize {
        4usize << (2 * k)
    }

    /// Add terms given in descending order.
    pub fn add(&mut self, mut terms: Vec<Term>) {
        if terms.is_empty() {
            return;
        }
        terms.reverse();
        let mut k = 0;
        while Self::cap(k) < terms.len() {
            k += 1;
        }
        loop {
            if self.buckets.len() <= k {
                self.buckets.resize_with(k + 1, Vec::new);
            }
            terms = merge_ascending(std::mem::take(&mut self.buckets[k]), terms);
            if terms.len() <= Self::cap(k) {
                self.buckets[k] = terms;
                return;
            }
            k += 1;
        }
    }

    /// Remove and return the leading term of the sum.
    pub fn pop_lead(&mut self) -> Option<Term> {
        loop {
            let top = self.buckets.iter().filter_map(|b| b.last().map(|t| t.key)).max()?;
            let mut lead: Option<Term> = None;
            for b in self.buckets.iter_mut() {
                if b.last().map(|t| t.key) == Some(top) {
                    let t = b.pop().unwrap();
                    lead = Some(match lead {
                        None => t,
                        Some(mut l) => {
                            l.c = l.c.add(&t.c);
                            l
                        }
                    });
                }
            }
            let lead = lead.unwrap();
            if !lead.c.is_zero() {
                return Some(lead);
            }
        }
    }

    pub fn into_poly(self) -> OPoly {
        let mut all = Vec::new();
        for b in self.buckets {
            all = merge_ascending(all, b);
        }
        all.reverse();
        OPoly { terms: all }
    }
}
