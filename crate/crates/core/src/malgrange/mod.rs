//! Annihilators of `f^s`, the Bernstein-Sato ideal membership test and its
//! certificates.

mod action;
mod membership;

use std::sync::Arc;

use thiserror::Error;

use crate::groebner::{eliminate_with, Budget, GbError, TermOrder};
use crate::poly::{Coeff, MPoly};
use crate::scalars::ExactScalar;
use crate::weyl::{AlgebraSignature, Generator, Mono, WeylElement, WeylError};

pub use action::{action_check, apply_to_power, apply_to_shifted_power, replay};
pub use membership::{
    bs_membership, bs_membership_with, obstruction, product_check, Certificate, MembershipOracle, MembershipResult,
    ProductCertificate, ProductMembership,
};

/// Polynomial in `x1..xn` (or `s1..sp`) with exact coefficients.
pub type XPoly = MPoly<ExactScalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalgrangeError {
    #[error("component f{0} is zero")]
    ZeroComponent(usize),
    #[error("b must be nonzero")]
    ZeroPolynomial,
    #[error("component f{0} mentions x{1} beyond n = {2}")]
    TooFewVariables(usize, usize, usize),
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl MalgrangeError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, MalgrangeError::Groebner(e) if e.is_budget_exceeded())
    }
}

/// The tuple `f = (f1, ..., fp)` in `x1..xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyPair {
    n: usize,
    fs: Vec<XPoly>,
    product: XPoly,
    partials: Vec<Vec<XPoly>>,
}

impl PolyPair {
    /// `n` defaults to the larger of 2 and the highest variable used.
    pub fn new(fs: Vec<XPoly>, n: Option<usize>) -> Result<Self, MalgrangeError> {
        for (j, f) in fs.iter().enumerate() {
            if f.is_zero() {
                return Err(MalgrangeError::ZeroComponent(j + 1));
            }
        }
        let used = fs.iter().map(|f| f.nvars()).max().unwrap_or(0);
        let n = match n {
            Some(n) => {
                if let Some((j, _)) = fs.iter().enumerate().find(|(_, f)| f.nvars() > n) {
                    return Err(MalgrangeError::TooFewVariables(j + 1, fs[j].nvars(), n));
                }
                n
            }
            None => used.max(2),
        };
        let product = fs.iter().fold(XPoly::one(), |acc, f| acc.mul(f));
        let partials = fs
            .iter()
            .map(|f| (0..n).map(|i| f.derivative(i)).collect())
            .collect();
        Ok(PolyPair {
            n,
            fs,
            product,
            partials,
        })
    }

    pub fn pair(f1: XPoly, f2: XPoly) -> Result<Self, MalgrangeError> {
        Self::new(vec![f1, f2], None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.fs.len()
    }

    pub fn f(&self, j: usize) -> &XPoly {
        &self.fs[j]
    }

    pub fn components(&self) -> &[XPoly] {
        &self.fs
    }

    /// `F = f1 ⋯ fp`.
    pub fn product(&self) -> &XPoly {
        &self.product
    }

    /// `∂f_j/∂x_i`.
    pub fn partial(&self, j: usize, i: usize) -> &XPoly {
        &self.partials[j][i]
    }

    /// Every component vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.fs.iter().all(|f| f.constant_term().is_zero())
    }

    /// Components `f_j` with an irreducible factor that divides no other
    /// component. Every element of `B(f)` vanishes on `s_j = -1` for these.
    pub fn pole_components(&self) -> Vec<usize> {
        (0..self.p())
            .filter(|&j| {
                let fj = &self.fs[j];
                let Some(d) = fj.total_degree().filter(|&d| d > 0) else {
                    return false;
                };
                let others = (0..self.p())
                    .filter(|&k| k != j)
                    .fold(XPoly::one(), |acc, k| acc.mul(&self.fs[k]));
                others.pow(d).div_exact(fj).is_none()
            })
            .collect()
    }

    /// Substitute numeric values for the parameters `y`.
    pub fn specialize(
        &self,
        point: &std::collections::BTreeMap<usize, num_rational::BigRational>,
    ) -> Result<Self, crate::scalars::ScalarError> {
        let mut fs = Vec::new();
        for f in &self.fs {
            let mut terms = Vec::new();
            for (e, c) in f.terms() {
                terms.push((e.clone(), ExactScalar::from_rational(c.specialize(point)?)));
            }
            fs.push(XPoly::from_terms(terms));
        }
        Self::new(fs, Some(self.n)).map_err(|_| crate::scalars::ScalarError::PoleAtPoint)
    }
}

/// Embed a polynomial in `x` into a signature containing `x1..xn`.
pub fn x_poly_to_weyl(p: &XPoly, sig: &Arc<AlgebraSignature>) -> WeylElement {
    embed(p, sig, Generator::X)
}

/// Embed a polynomial in `s` into a signature containing `s1..sp`.
pub fn s_poly_to_weyl(p: &XPoly, sig: &Arc<AlgebraSignature>) -> WeylElement {
    embed(p, sig, Generator::S)
}

fn embed(p: &XPoly, sig: &Arc<AlgebraSignature>, gen: fn(usize) -> Generator) -> WeylElement {
    let terms = p
        .terms()
        .map(|(e, c)| {
            let mut m = Mono::ONE;
            for (i, &k) in e.iter().enumerate() {
                m.0[sig.idx(gen(i))] = k as u16;
            }
            (m, c.clone())
        })
        .collect();
    WeylElement::from_terms(sig, terms)
}

/// Generators `t_j - f_j` and `Dx_i + Σ_j ∂f_j/∂x_i Dt_j` of the annihilator
/// of `f^s` in `D_{x,t}`.
pub fn malgrange_ideal(f: &PolyPair) -> Vec<WeylElement> {
    let sig = Arc::new(AlgebraSignature::weyl_xt(f.n, f.p()).expect("valid signature"));
    let mut out = Vec::new();
    for j in 0..f.p() {
        let t = WeylElement::generator(&sig, Generator::T(j));
        out.push(t.sub(&x_poly_to_weyl(&f.fs[j], &sig)).expect("same signature"));
    }
    for i in 0..f.n {
        let mut e = WeylElement::generator(&sig, Generator::Dx(i));
        for j in 0..f.p() {
            let d = x_poly_to_weyl(&f.partials[j][i], &sig);
            let term = d.mul(&WeylElement::generator(&sig, Generator::Dt(j))).expect("same signature");
            e = e.add(&term).expect("same signature");
        }
        out.push(e);
    }
    out
}

/// Generators of `Ann_{D[s]} f^s`, computed in `D<s, Dt>` by eliminating `Dt`.
pub fn s_annihilator(f: &PolyPair) -> Result<Vec<WeylElement>, MalgrangeError> {
    s_annihilator_with(f, &Budget::default())
}

pub fn s_annihilator_with(f: &PolyPair, budget: &Budget) -> Result<Vec<WeylElement>, MalgrangeError> {
    let sig = Arc::new(AlgebraSignature::s_dt(f.n, f.p())?);
    let mut gens = Vec::new();
    for j in 0..f.p() {
        let s = WeylElement::generator(&sig, Generator::S(j));
        let dt = WeylElement::generator(&sig, Generator::Dt(j));
        gens.push(s.add(&x_poly_to_weyl(&f.fs[j], &sig).mul(&dt)?)?);
    }
    for i in 0..f.n {
        let mut e = WeylElement::generator(&sig, Generator::Dx(i));
        for j in 0..f.p() {
            let d = x_poly_to_weyl(&f.partials[j][i], &sig);
            e = e.add(&d.mul(&WeylElement::generator(&sig, Generator::Dt(j)))?)?;
        }
        gens.push(e);
    }
    let block: Vec<Generator> = (0..f.p()).map(Generator::Dt).collect();
    let ord = TermOrder::elimination(&block, &TermOrder::grlex(&sig));
    let elim = eliminate_with(&gens, &block, &ord, budget)?;
    let target = Arc::new(AlgebraSignature::d_s(f.n, f.p())?);
    let mut out = Vec::new();
    for e in elim {
        out.push(e.map_to(&target)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
