//! Division, Buchberger completion, elimination, initial ideals, Gröbner
//! cones and a localization membership test, for left ideals in any
//! signature of [`crate::weyl`].

mod buchberger;
mod opoly;
mod order;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Duration;

use num_rational::Rational64;
use thiserror::Error;

use crate::poly::Coeff;
use crate::scalars::ExactScalar;
use crate::weyl::{
    dehomogenize, homogenize, AlgebraSignature, Generator, Mono, WeightVector, WeylElement, WeylError,
};

use buchberger::{complete, Elem, Reducer, Step};
use opoly::OPoly;
pub use order::{TermOrder, MAX_ROWS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("inadmissible term order: {0}")]
    InadmissibleOrder(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("the zero direction has no initial ideal")]
    ZeroDirection,
    #[error("operation needs a commutative ideal")]
    NotCommutative,
    #[error("elements and order live in different signatures")]
    SignatureMismatch,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl GbError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, GbError::BudgetExceeded(_))
    }
}

/// Limits on a completion. Exceeding any of them is an error, never a hang.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 500_000,
            max_basis: 50_000,
            time_limit: None,
        }
    }
}

/// A reduced Gröbner basis with its marked leading monomials.
#[derive(Clone, Debug)]
pub struct MarkedBasis {
    order: TermOrder,
    elems: Vec<Elem>,
}

/// Result of dividing by a basis: `p = Σ quotients[i] * basis[i] + remainder`.
#[derive(Clone, Debug)]
pub struct Division {
    pub remainder: WeylElement,
    pub quotients: Vec<WeylElement>,
}

impl MarkedBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn signature(&self) -> &Arc<AlgebraSignature> {
        self.order.signature()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn elements(&self) -> Vec<WeylElement> {
        self.elems.iter().map(|e| e.poly.to_element(self.signature())).collect()
    }

    pub fn marks(&self) -> Vec<Mono> {
        self.elems.iter().map(|e| e.lm).collect()
    }

    /// Cofactor images carried through the completion, if tracked.
    pub fn shadows(&self) -> Option<Vec<WeylElement>> {
        self.elems
            .iter()
            .map(|e| e.shadow.as_ref().map(|s| s.to_element(self.signature())))
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm.is_one()
    }

    fn check(&self, p: &WeylElement) -> Result<(), GbError> {
        if p.signature() != self.signature() {
            return Err(GbError::SignatureMismatch);
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &WeylElement) -> Result<WeylElement, GbError> {
        self.check(p)?;
        let red = Reducer {
            ord: &self.order,
            basis: &self.elems,
            active: None,
        };
        let r = red.reduce(OPoly::from_element(p, &self.order), true, None, &mut 0, None, None)?;
        Ok(r.to_element(self.signature()))
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool, GbError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Normal form with the left quotients of the division.
    pub fn divide(&self, p: &WeylElement) -> Result<Division, GbError> {
        self.check(p)?;
        let red = Reducer {
            ord: &self.order,
            basis: &self.elems,
            active: None,
        };
        let mut trace: Vec<Step> = Vec::new();
        let r = red.reduce(
            OPoly::from_element(p, &self.order),
            true,
            None,
            &mut 0,
            Some(&mut trace),
            None,
        )?;
        let sig = self.signature();
        let mut q: Vec<Vec<(Mono, ExactScalar)>> = vec![Vec::new(); self.elems.len()];
        for s in trace {
            q[s.idx].push((s.mono, s.c));
        }
        Ok(Division {
            remainder: r.to_element(sig),
            quotients: q.into_iter().map(|t| WeylElement::from_terms(sig, t)).collect(),
        })
    }

    /// Each element's `V^L` initial part, for a 2-dimensional `L`.
    pub fn initial_parts(&self, w: &WeightVector) -> Vec<WeylElement> {
        self.elements()
            .iter()
            .map(|e| w.initial_part(e).expect("basis elements are nonzero"))
            .collect()
    }
}

fn prepare(gens: &[WeylElement], ord: &TermOrder) -> Result<(), GbError> {
    for g in gens {
        if g.signature() != ord.signature() {
            return Err(GbError::SignatureMismatch);
        }
    }
    ord.check_admissible()
}

pub fn buchberger(gens: &[WeylElement], ord: &TermOrder) -> Result<MarkedBasis, GbError> {
    buchberger_with(gens, ord, &Budget::default())
}

pub fn buchberger_with(gens: &[WeylElement], ord: &TermOrder, budget: &Budget) -> Result<MarkedBasis, GbError> {
    prepare(gens, ord)?;
    let inputs = gens.iter().map(|g| (OPoly::from_element(g, ord), None)).collect();
    let c = complete(inputs, ord, budget)?;
    Ok(MarkedBasis {
        order: ord.clone(),
        elems: c.elems,
    })
}

/// Completion that also carries, for each element, the image of a linear
/// "shadow" map given on the generators.
pub fn buchberger_tracked(
    gens: &[(WeylElement, WeylElement)],
    ord: &TermOrder,
    budget: &Budget,
) -> Result<MarkedBasis, GbError> {
    let plain: Vec<WeylElement> = gens.iter().map(|(g, _)| g.clone()).collect();
    prepare(&plain, ord)?;
    for (_, s) in gens {
        if s.signature() != ord.signature() {
            return Err(GbError::SignatureMismatch);
        }
    }
    let inputs = gens
        .iter()
        .map(|(g, s)| (OPoly::from_element(g, ord), Some(OPoly::from_element(s, ord))))
        .collect();
    let c = complete(inputs, ord, budget)?;
    Ok(MarkedBasis {
        order: ord.clone(),
        elems: c.elems,
    })
}

pub fn normal_form(p: &WeylElement, g: &MarkedBasis) -> Result<WeylElement, GbError> {
    g.normal_form(p)
}

/// Generators of the intersection of the ideal with the subalgebra free of
/// `block`. `ord` must be an elimination order for exactly that block.
pub fn eliminate(gens: &[WeylElement], block: &[Generator], ord: &TermOrder) -> Result<Vec<WeylElement>, GbError> {
    eliminate_with(gens, block, ord, &Budget::default())
}

pub fn eliminate_with(
    gens: &[WeylElement],
    block: &[Generator],
    ord: &TermOrder,
    budget: &Budget,
) -> Result<Vec<WeylElement>, GbError> {
    let sig = ord.signature();
    let want: BTreeSet<usize> = block.iter().filter_map(|&g| sig.index(g)).collect();
    let have: BTreeSet<usize> = ord.block_indices().iter().copied().collect();
    if want != have {
        return Err(GbError::InadmissibleOrder("order does not eliminate the requested block".into()));
    }
    let gb = buchberger_with(gens, ord, budget)?;
    Ok(gb
        .elements()
        .into_iter()
        .filter(|e| !block.iter().any(|&b| e.uses(b)))
        .collect())
}

/// The reduced grlex basis of the ideal, with every element homogenized:
/// generators of `h(I)`.
pub fn homogenized_ideal(gens: &[WeylElement], budget: &Budget) -> Result<Vec<WeylElement>, GbError> {
    let sig = match gens.first() {
        Some(g) => g.signature().clone(),
        None => return Ok(Vec::new()),
    };
    let gb = buchberger_with(gens, &TermOrder::grlex(&sig), budget)?;
    gb.elements().iter().map(|e| homogenize(e).map_err(GbError::from)).collect()
}

/// Reduced `≺_L^h` basis of `h(I)` from generators of `h(I)`.
pub fn l_basis(hgens: &[WeylElement], l: &[i64], budget: &Budget) -> Result<MarkedBasis, GbError> {
    if l.iter().all(|&v| v == 0) {
        return Err(GbError::ZeroDirection);
    }
    let sig = hgens
        .first()
        .map(|g| g.signature().clone())
        .ok_or_else(|| GbError::InadmissibleOrder("empty generator list has no signature".into()))?;
    let ord = TermOrder::homogenized_l(&sig, l)?;
    buchberger_with(hgens, &ord, budget)
}

/// `gr^L(I)` for `I ⊂ D_{x,t}`, as generators in `D_{x,t}`.
pub fn initial_ideal(gens: &[WeylElement], l: &[i64]) -> Result<Vec<WeylElement>, GbError> {
    initial_ideal_with(gens, l, &Budget::default())
}

pub fn initial_ideal_with(gens: &[WeylElement], l: &[i64], budget: &Budget) -> Result<Vec<WeylElement>, GbError> {
    if l.iter().all(|&v| v == 0) {
        return Err(GbError::ZeroDirection);
    }
    let hgens = homogenized_ideal(gens, budget)?;
    if hgens.is_empty() {
        return Ok(Vec::new());
    }
    let gb = l_basis(&hgens, l, budget)?;
    initial_from_basis(&gb, l)
}

/// Dehomogenized `V^L`-initial parts of an `≺_L^h` basis.
pub fn initial_from_basis(gb: &MarkedBasis, l: &[i64]) -> Result<Vec<WeylElement>, GbError> {
    let w = WeightVector::v_l(gb.signature(), l);
    gb.initial_parts(&w)
        .iter()
        .map(|e| dehomogenize(e).map_err(GbError::from))
        .collect()
}

/// The closed set of directions `L' = (l1', l2')` in the quadrant keeping
/// every marked monomial of maximal `V^{L'}` weight in its element.
///
/// Directions are parametrized by `τ = l2'/(l1'+l2')`; the cone is the
/// interval `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCone {
    /// Half-planes `a*l1 + b*l2 >= 0`, deduplicated and sorted.
    pub constraints: Vec<(i64, i64)>,
    pub lower: Rational64,
    pub upper: Rational64,
}

impl GroebnerCone {
    pub fn quadrant() -> Self {
        GroebnerCone {
            constraints: Vec::new(),
            lower: Rational64::from_integer(0),
            upper: Rational64::from_integer(1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.lower < self.upper
    }

    /// Primitive extremal rays, lower `τ` first.
    pub fn rays(&self) -> Vec<(u64, u64)> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut r = vec![ray_of(self.lower)];
        if self.upper != self.lower {
            r.push(ray_of(self.upper));
        }
        r
    }

    pub fn contains(&self, l: (i64, i64)) -> bool {
        self.constraints.iter().all(|&(a, b)| a * l.0 + b * l.1 >= 0)
    }
}

/// Primitive integer direction with `τ = l2/(l1+l2)`.
pub fn ray_of(tau: Rational64) -> (u64, u64) {
    let (p, q) = (*tau.numer(), *tau.denom());
    ((q - p) as u64, p as u64)
}

pub fn tau_of(l: (i64, i64)) -> Rational64 {
    Rational64::new(l.1, l.0 + l.1)
}

fn v_exponents(sig: &AlgebraSignature, m: &Mono) -> (i64, i64) {
    let d = |j: usize| -> i64 {
        let dt = sig.index(Generator::Dt(j)).map(|i| m.get(i) as i64).unwrap_or(0);
        let t = sig.index(Generator::T(j)).map(|i| m.get(i) as i64).unwrap_or(0);
        dt - t
    };
    (d(0), d(1))
}

pub fn groebner_cone(g: &MarkedBasis) -> GroebnerCone {
    let sig = g.signature();
    let mut cons: BTreeSet<(i64, i64)> = BTreeSet::new();
    for e in &g.elems {
        let (m1, m2) = v_exponents(sig, &e.lm);
        for t in &e.poly.terms[1..] {
            let (o1, o2) = v_exponents(sig, &t.mono);
            let (a, b) = (m1 - o1, m2 - o2);
            if (a, b) != (0, 0) {
                let gd = num_integer::gcd(a, b);
                cons.insert((a / gd, b / gd));
            }
        }
    }
    let mut cone = GroebnerCone::quadrant();
    for &(a, b) in &cons {
        // a(1-τ) + bτ >= 0  <=>  a + (b-a)τ >= 0
        let k = b - a;
        if k > 0 {
            cone.lower = cone.lower.max(Rational64::new(-a, k));
        } else if k < 0 {
            cone.upper = cone.upper.min(Rational64::new(a, -k));
        } else if a < 0 {
            cone.lower = Rational64::from_integer(1);
            cone.upper = Rational64::from_integer(0);
        }
    }
    cone.constraints = cons.into_iter().collect();
    cone
}

fn used_generators(elems: &[WeylElement]) -> Vec<bool> {
    let n = elems.first().map(|e| e.signature().nvars()).unwrap_or(0);
    let mut used = vec![false; n];
    for e in elems {
        for (u, s) in used.iter_mut().zip(e.support()) {
            *u |= s;
        }
    }
    used
}

/// Exact division in a commutative setting; `None` if `g` does not divide `p`.
fn divide_commutative(p: &WeylElement, g: &WeylElement) -> Option<WeylElement> {
    let sig = p.signature();
    let ord = TermOrder::grlex(sig);
    let mut r = OPoly::from_element(p, &ord);
    let go = OPoly::from_element(g, &ord);
    let (gl, gc) = (go.lead().mono, go.lead().c.clone());
    let mut q = OPoly::zero();
    while !r.is_zero() {
        let lt = r.lead().clone();
        if !gl.divides(&lt.mono) {
            return None;
        }
        let m = lt.mono.div(&gl);
        let c = lt.c.try_div(&gc).ok()?;
        q = q.add(&OPoly::monomial(&ord, m, c.clone()));
        r = r.add_scaled(&go.mul_left(&ord, &m, &ExactScalar::int(1)), &c.neg());
    }
    Some(q.to_element(sig))
}

/// `(J : g)` for a commutative ideal, via `J ∩ <g>` with an auxiliary variable.
pub fn ideal_quotient(j: &[WeylElement], g: &WeylElement, budget: &Budget) -> Result<Vec<WeylElement>, GbError> {
    let sig = g.signature().clone();
    let mut all = j.to_vec();
    all.push(g.clone());
    if !sig.is_commutative_on(&used_generators(&all)) {
        return Err(GbError::NotCommutative);
    }
    if g.is_zero() {
        return Ok(vec![WeylElement::one(&sig)]);
    }
    let aux = Arc::new(sig.with_aux(sig.aux() + 1)?);
    let w = WeylElement::generator(&aux, Generator::Aux(sig.aux()));
    let one = WeylElement::one(&aux);
    let mut gens = Vec::new();
    for e in j {
        gens.push(w.mul(&e.map_to(&aux)?)?);
    }
    gens.push(one.sub(&w)?.mul(&g.map_to(&aux)?)?);
    let ord = TermOrder::elimination(&[Generator::Aux(sig.aux())], &TermOrder::grlex(&aux));
    let inter = eliminate_with(&gens, &[Generator::Aux(sig.aux())], &ord, budget)?;
    let mut out = Vec::new();
    for e in inter {
        let e = e.map_to(&sig)?;
        let q = divide_commutative(&e, g).expect("elements of J ∩ <g> are multiples of g");
        out.push(q);
    }
    Ok(out)
}

/// Whether `g` lies in the ideal generated by `j` after localizing at the
/// origin of `localvars` (inverting every polynomial in those variables that
/// does not vanish there). Other variables are kept polynomial.
pub fn local_membership(g: &WeylElement, j: &[WeylElement], localvars: &[Generator]) -> Result<bool, GbError> {
    local_membership_with(g, j, localvars, &Budget::default())
}

pub fn local_membership_with(
    g: &WeylElement,
    j: &[WeylElement],
    localvars: &[Generator],
    budget: &Budget,
) -> Result<bool, GbError> {
    let sig = g.signature().clone();
    let quot = ideal_quotient(j, g, budget)?;
    let others: Vec<Generator> = sig
        .generators()
        .iter()
        .copied()
        .filter(|x| !localvars.contains(x))
        .collect();
    let ord = TermOrder::elimination(&others, &TermOrder::grlex(&sig));
    let local = eliminate_with(&quot, &others, &ord, budget)?;
    Ok(local.iter().any(|e| !e.coeff(&Mono::ONE).is_zero()))
}
