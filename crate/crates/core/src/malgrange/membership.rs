use std::collections::BTreeMap;
use std::sync::Arc;

use crate::scalars::ExactScalar;
use crate::groebner::{buchberger_tracked, buchberger_with, Budget, MarkedBasis, TermOrder};
use crate::weyl::{AlgebraSignature, WeylElement};

use super::action::apply_to_shifted_power;
use super::{s_annihilator_with, s_poly_to_weyl, x_poly_to_weyl, MalgrangeError, PolyPair, XPoly};

/// Witness for `b(s) f^s = P f^{s+1}`.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The polynomial `b` in `s1..sp`.
    pub b: XPoly,
    /// The operator `P ∈ D[s]`.
    pub operator: WeylElement,
    /// Nonzero left quotients of `b` by the basis of `Ann f^s + D[s] F`,
    /// as `(basis index, quotient)`. Empty when only `operator` is given.
    pub trace: Vec<(usize, WeylElement)>,
    /// The basis elements named in `trace`, with their cofactors.
    pub generators: BTreeMap<usize, (WeylElement, WeylElement)>,
}

#[derive(Clone, Debug)]
pub struct MembershipResult {
    pub member: bool,
    pub certificate: Option<Certificate>,
    /// A component `j` (from 0) such that `b` does not vanish on
    /// `s_j = -1`, which rules out membership without any division.
    pub obstruction: Option<usize>,
}

impl MembershipResult {
    fn rejected(j: usize) -> Self {
        MembershipResult {
            member: false,
            certificate: None,
            obstruction: Some(j),
        }
    }
}

/// The first component `j` of [`PolyPair::pole_components`] with
/// `b(s)|_{s_j = -1} != 0`.
pub fn obstruction(b: &XPoly, f: &PolyPair) -> Option<usize> {
    f.pole_components().into_iter().find(|&j| !vanishes_on(b, j))
}

fn vanishes_on(b: &XPoly, j: usize) -> bool {
    let subs: Vec<XPoly> = (0..b.nvars().max(j + 1))
        .map(|i| if i == j { XPoly::constant(ExactScalar::int(-1)) } else { XPoly::var(i) })
        .collect();
    b.substitute(&subs).is_zero()
}

/// The basis of `Ann_{D[s]} f^s + D[s] F` with cofactor tracking, reusable
/// for many membership queries on the same `f`.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    f: PolyPair,
    sig: Arc<AlgebraSignature>,
    annihilator: Vec<WeylElement>,
    basis: MarkedBasis,
    shadows: Vec<WeylElement>,
}

impl MembershipOracle {
    pub fn new(f: &PolyPair) -> Result<Self, MalgrangeError> {
        Self::with_budget(f, &Budget::default())
    }

    pub fn with_budget(f: &PolyPair, budget: &Budget) -> Result<Self, MalgrangeError> {
        let sig = Arc::new(AlgebraSignature::d_s(f.n(), f.p())?);
        let ord = TermOrder::grlex(&sig);
        let annihilator = buchberger_with(&s_annihilator_with(f, budget)?, &ord, budget)?.elements();
        let zero = WeylElement::zero(&sig);
        let mut gens: Vec<(WeylElement, WeylElement)> =
            annihilator.iter().map(|a| (a.clone(), zero.clone())).collect();
        gens.push((x_poly_to_weyl(f.product(), &sig), WeylElement::one(&sig)));
        let basis = buchberger_tracked(&gens, &ord, budget)?;
        let shadows = basis.shadows().expect("shadows are tracked");
        Ok(MembershipOracle {
            f: f.clone(),
            sig,
            annihilator,
            basis,
            shadows,
        })
    }

    pub fn pair(&self) -> &PolyPair {
        &self.f
    }

    pub fn annihilator(&self) -> &[WeylElement] {
        &self.annihilator
    }

    pub fn basis(&self) -> &MarkedBasis {
        &self.basis
    }

    pub fn contains(&self, b: &XPoly) -> Result<MembershipResult, MalgrangeError> {
        if b.is_zero() {
            return Err(MalgrangeError::ZeroPolynomial);
        }
        if let Some(j) = obstruction(b, &self.f) {
            return Ok(MembershipResult::rejected(j));
        }
        self.divide(b)
    }

    /// [`MembershipOracle::contains`] without the `s_j = -1` shortcut.
    pub fn divide(&self, b: &XPoly) -> Result<MembershipResult, MalgrangeError> {
        if b.is_zero() {
            return Err(MalgrangeError::ZeroPolynomial);
        }
        let be = s_poly_to_weyl(b, &self.sig);
        let div = self.basis.divide(&be)?;
        if !div.remainder.is_zero() {
            return Ok(MembershipResult {
                member: false,
                certificate: None,
                obstruction: None,
            });
        }
        let elems = self.basis.elements();
        let mut operator = WeylElement::zero(&self.sig);
        let mut trace = Vec::new();
        let mut generators = BTreeMap::new();
        for (i, q) in div.quotients.into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            operator = operator.add(&q.mul(&self.shadows[i])?)?;
            generators.insert(i, (elems[i].clone(), self.shadows[i].clone()));
            trace.push((i, q));
        }
        Ok(MembershipResult {
            member: true,
            certificate: Some(Certificate {
                b: b.clone(),
                operator,
                trace,
                generators,
            }),
            obstruction: None,
        })
    }
}

/// Witness for `l_1 ⋯ l_K f^s ∈ D[s] f^{s+1}` kept as a division trace.
///
/// With `r_0 = 1`, each step reads `r_k = l_k r_{k-1} - Σ q g` and the last
/// remainder is zero. Every basis element used satisfies `g f^s = c f^{s+1}`,
/// so `l_1 ⋯ l_K f^s = P f^{s+1}` for `P = Σ_k (l_{k+1} ⋯ l_K) Σ q c`.
#[derive(Clone, Debug)]
pub struct ProductCertificate {
    pub factors: Vec<XPoly>,
    /// Per factor, the nonzero quotients `(basis index, q)`.
    pub steps: Vec<Vec<(usize, WeylElement)>>,
    /// Basis elements used, with their cofactors `c`.
    pub generators: BTreeMap<usize, (WeylElement, WeylElement)>,
}

/// Outcome of [`MembershipOracle::contains_product`].
#[derive(Clone, Debug)]
pub struct ProductMembership {
    pub member: bool,
    /// As in [`MembershipResult`].
    pub obstruction: Option<usize>,
    /// Length of the shortest prefix of the factor list lying in `B(f)`.
    /// The full product is a multiple of that prefix.
    pub prefix: Option<usize>,
    pub certificate: Option<ProductCertificate>,
}

impl MembershipOracle {
    /// Membership of `factors[0] * factors[1] * ⋯`, without expanding the
    /// product: `s` is central, so reducing one factor at a time gives the
    /// normal form of every prefix.
    pub fn contains_product(&self, factors: &[XPoly]) -> Result<ProductMembership, MalgrangeError> {
        if factors.iter().any(|q| q.is_zero()) {
            return Err(MalgrangeError::ZeroPolynomial);
        }
        // A product vanishes on s_j = -1 exactly when one of its factors does.
        let blocked = self
            .f
            .pole_components()
            .into_iter()
            .find(|&j| factors.iter().all(|q| !vanishes_on(q, j)));
        if let Some(j) = blocked {
            return Ok(ProductMembership {
                member: false,
                obstruction: Some(j),
                prefix: None,
                certificate: None,
            });
        }
        self.divide_product(factors)
    }

    /// [`MembershipOracle::contains_product`] without the `s_j = -1` shortcut.
    pub fn divide_product(&self, factors: &[XPoly]) -> Result<ProductMembership, MalgrangeError> {
        if factors.iter().any(|q| q.is_zero()) {
            return Err(MalgrangeError::ZeroPolynomial);
        }
        let elems = self.basis.elements();
        let mut r = WeylElement::one(&self.sig);
        let mut steps = Vec::new();
        let mut generators = BTreeMap::new();
        for (k, q) in factors.iter().enumerate() {
            let div = self.basis.divide(&s_poly_to_weyl(q, &self.sig).mul(&r)?)?;
            let mut step = Vec::new();
            for (i, qi) in div.quotients.into_iter().enumerate() {
                if !qi.is_zero() {
                    generators
                        .entry(i)
                        .or_insert_with(|| (elems[i].clone(), self.shadows[i].clone()));
                    step.push((i, qi));
                }
            }
            steps.push(step);
            r = div.remainder;
            if r.is_zero() {
                return Ok(ProductMembership {
                    member: true,
                    obstruction: None,
                    prefix: Some(k + 1),
                    certificate: Some(ProductCertificate {
                        factors: factors[..=k].to_vec(),
                        steps,
                        generators,
                    }),
                });
            }
        }
        Ok(ProductMembership {
            member: false,
            obstruction: None,
            prefix: None,
            certificate: None,
        })
    }
}

/// Replay a trace certificate: the steps telescope to zero and every basis
/// element used acts on `f^s` as its cofactor times `F`.
pub fn product_check(cert: &ProductCertificate, f: &PolyPair) -> Result<bool, MalgrangeError> {
    if cert.steps.len() != cert.factors.len() {
        return Err(MalgrangeError::BadCertificate("one step per factor expected".into()));
    }
    let sig = Arc::new(AlgebraSignature::d_s(f.n(), f.p())?);
    for (g, c) in cert.generators.values() {
        if g.signature() != &sig || c.signature() != &sig {
            return Err(MalgrangeError::BadCertificate("operators must lie in D[s]".into()));
        }
    }
    let mut r = WeylElement::one(&sig);
    for (q, step) in cert.factors.iter().zip(&cert.steps) {
        r = s_poly_to_weyl(q, &sig).mul(&r)?;
        for (i, qi) in step {
            let (g, _) = cert
                .generators
                .get(i)
                .ok_or_else(|| MalgrangeError::BadCertificate(format!("unknown generator {i}")))?;
            r = r.sub(&qi.mul(g)?)?;
        }
    }
    if !r.is_zero() {
        return Ok(false);
    }
    let big_f = x_poly_to_weyl(f.product(), &sig);
    for (g, c) in cert.generators.values() {
        let op = g.sub(&c.mul(&big_f)?)?;
        if !apply_to_shifted_power(&op, f, 0)?.0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decide `b(s) ∈ B(f)`; on success return a certificate.
pub fn bs_membership(b: &XPoly, f: &PolyPair) -> Result<MembershipResult, MalgrangeError> {
    bs_membership_with(b, f, &Budget::default())
}

pub fn bs_membership_with(b: &XPoly, f: &PolyPair, budget: &Budget) -> Result<MembershipResult, MalgrangeError> {
    if b.is_zero() {
        return Err(MalgrangeError::ZeroPolynomial);
    }
    if let Some(j) = obstruction(b, f) {
        return Ok(MembershipResult::rejected(j));
    }
    MembershipOracle::with_budget(f, budget)?.divide(b)
}
