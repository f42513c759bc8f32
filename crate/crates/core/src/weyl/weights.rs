use std::sync::Arc;

use super::element::WeylElement;
use super::signature::{AlgebraSignature, Generator, MAX_VARS};
use super::WeylError;

/// Integer weight per generator of a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: [i64; MAX_VARS],
}

impl WeightVector {
    pub fn zero() -> Self {
        WeightVector {
            weights: [0; MAX_VARS],
        }
    }

    pub fn from_slice(w: &[i64]) -> Self {
        let mut weights = [0; MAX_VARS];
        weights[..w.len()].copy_from_slice(w);
        WeightVector { weights }
    }

    pub fn set(&mut self, sig: &AlgebraSignature, g: Generator, w: i64) {
        if let Some(i) = sig.index(g) {
            self.weights[i] = w;
        }
    }

    /// `V_j`: `t_j` weighs -1 and `Dt_j` weighs +1.
    pub fn v(sig: &AlgebraSignature, j: usize) -> Self {
        let mut e = vec![0; sig.p()];
        e[j] = 1;
        Self::v_l(sig, &e)
    }

    /// `V^L = Σ l_j V_j`.
    pub fn v_l(sig: &AlgebraSignature, l: &[i64]) -> Self {
        let mut w = Self::zero();
        for (j, &lj) in l.iter().enumerate() {
            w.set(sig, Generator::T(j), -lj);
            w.set(sig, Generator::Dt(j), lj);
        }
        w
    }

    /// Weights on `x1..xn` only.
    pub fn alpha(sig: &AlgebraSignature, alpha: &[i64]) -> Self {
        let mut w = Self::zero();
        for (i, &a) in alpha.iter().enumerate() {
            w.set(sig, Generator::X(i), a);
        }
        w
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> i64 {
        self.weights[i]
    }

    /// Maximal weight over the terms (`ord`).
    pub fn ord(&self, p: &WeylElement) -> Result<i64, WeylError> {
        p.terms()
            .iter()
            .map(|(m, _)| m.dot(&self.weights))
            .max()
            .ok_or(WeylError::ZeroElement)
    }

    /// Minimal weight over the terms (`rho`).
    pub fn rho(&self, p: &WeylElement) -> Result<i64, WeylError> {
        p.terms()
            .iter()
            .map(|(m, _)| m.dot(&self.weights))
            .min()
            .ok_or(WeylError::ZeroElement)
    }

    /// Sum of the terms of maximal weight.
    pub fn initial_part(&self, p: &WeylElement) -> Result<WeylElement, WeylError> {
        let top = self.ord(p)?;
        Ok(self.terms_of_weight(p, top))
    }

    /// Sum of the terms of minimal weight.
    pub fn initial_part_min(&self, p: &WeylElement) -> Result<WeylElement, WeylError> {
        let low = self.rho(p)?;
        Ok(self.terms_of_weight(p, low))
    }

    fn terms_of_weight(&self, p: &WeylElement, w: i64) -> WeylElement {
        let terms = p
            .terms()
            .iter()
            .filter(|(m, _)| m.dot(&self.weights) == w)
            .cloned()
            .collect();
        WeylElement::from_terms(p.signature(), terms)
    }

    /// True if every term has the same weight.
    pub fn is_homogeneous(&self, p: &WeylElement) -> bool {
        let mut it = p.terms().iter().map(|(m, _)| m.dot(&self.weights));
        match it.next() {
            Some(w) => it.all(|v| v == w),
            None => true,
        }
    }
}

/// Multiply every term by the power of `h` that lifts it to the top degree.
pub fn homogenize(p: &WeylElement) -> Result<WeylElement, WeylError> {
    let sig = p.signature();
    if sig.has_h() {
        return Err(WeylError::BadSignature("element already has h".into()));
    }
    let target = Arc::new(sig.with_h()?);
    let q = p.map_to(&target)?;
    let Some(top) = q.degree() else {
        return Ok(q);
    };
    let hi = target.h_idx().expect("h present");
    let terms = q
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut m2 = *m;
            m2.0[hi] += (top - m.degree()) as u16;
            (m2, c.clone())
        })
        .collect();
    Ok(WeylElement::from_terms(&target, terms))
}

/// Set `h = 1`.
pub fn dehomogenize(p: &WeylElement) -> Result<WeylElement, WeylError> {
    let sig = p.signature();
    let Some(hi) = sig.h_idx() else {
        return Err(WeylError::BadSignature("element has no h".into()));
    };
    let stripped: Vec<_> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut m2 = *m;
            m2.0[hi] = 0;
            (m2, c.clone())
        })
        .collect();
    let tmp = WeylElement::from_terms(sig, stripped);
    let target = Arc::new(sig.without_h()?);
    tmp.map_to(&target)
}
