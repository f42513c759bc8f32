//! Directional Bernstein-Sato polynomials `b_L` for a weight direction `L`.

use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::factored::FactoredBS;
use crate::groebner::{
    buchberger_with, eliminate_with, homogenized_ideal, initial_from_basis, l_basis, local_membership_with,
    Budget, GbError, MarkedBasis, TermOrder,
};
use crate::malgrange::{malgrange_ideal, PolyPair, XPoly};
use crate::poly::Coeff;
use crate::scalars::ExactScalar;
use crate::weyl::{AlgebraSignature, Generator, Mono, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlError {
    #[error("the direction L must be nonzero")]
    ZeroDirection,
    #[error("the direction has {0} entries but f has {1} components")]
    LengthMismatch(usize, usize),
    #[error("negative entry in L")]
    NegativeDirection,
    #[error("the elimination ideal in k[λ] is zero")]
    NoBFunction,
    #[error("localizing at the origin needs every f_j to vanish there")]
    NotLocal,
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

impl BlError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, BlError::Groebner(e) if e.is_budget_exceeded())
    }
}

#[derive(Clone, Debug)]
pub struct BlOptions {
    /// Strip factors that only appear away from the origin.
    pub localize: bool,
    /// Replace `L` by its primitive representative first.
    pub normalize: bool,
    /// Keep `I1..I4` in the result.
    pub keep_intermediate: bool,
    pub budget: Budget,
}

impl Default for BlOptions {
    fn default() -> Self {
        BlOptions {
            localize: false,
            normalize: true,
            keep_intermediate: false,
            budget: Budget::default(),
        }
    }
}

/// The ideals produced by the four steps.
#[derive(Clone, Debug, Default)]
pub struct Intermediate {
    pub i1: Vec<WeylElement>,
    pub i2: Vec<WeylElement>,
    pub i3: Vec<WeylElement>,
    pub i4: Vec<WeylElement>,
}

#[derive(Clone, Debug)]
pub struct DirectionalResult {
    pub l: Vec<i64>,
    /// Monic, in `λ`.
    pub b: FactoredBS,
    /// `b` before any local stripping.
    pub global: FactoredBS,
    pub localized: bool,
    pub intermediate: Option<Intermediate>,
}

/// `L / gcd(L)`.
pub fn primitive(l: &[i64]) -> Vec<i64> {
    let g = l.iter().fold(0i64, |acc, &v| acc.gcd(&v));
    if g == 0 {
        return l.to_vec();
    }
    l.iter().map(|v| v / g).collect()
}

fn check_direction(f: &PolyPair, l: &[i64]) -> Result<(), BlError> {
    if l.len() != f.p() {
        return Err(BlError::LengthMismatch(l.len(), f.p()));
    }
    if l.iter().any(|&v| v < 0) {
        return Err(BlError::NegativeDirection);
    }
    if l.iter().all(|&v| v == 0) {
        return Err(BlError::ZeroDirection);
    }
    Ok(())
}

/// `gr^L` of the Malgrange ideal: the dehomogenized `V^L`-initial parts of a
/// `≺_L^h` basis of `h(I)`.
pub fn gr_l(f: &PolyPair, l: &[i64], budget: &Budget) -> Result<Vec<WeylElement>, BlError> {
    check_direction(f, l)?;
    let hgens = homogenized_ideal(&malgrange_ideal(f), budget)?;
    let gb = l_basis(&hgens, l, budget)?;
    Ok(initial_from_basis(&gb, l)?)
}

pub fn b_l(f: &PolyPair, l: &[i64]) -> Result<DirectionalResult, BlError> {
    b_l_with(f, l, &BlOptions::default())
}

pub fn b_l_with(f: &PolyPair, l: &[i64], opts: &BlOptions) -> Result<DirectionalResult, BlError> {
    check_direction(f, l)?;
    if opts.localize && !f.vanishes_at_origin() {
        return Err(BlError::NotLocal);
    }
    let l = if opts.normalize { primitive(l) } else { l.to_vec() };
    let budget = &opts.budget;
    let (n, p) = (f.n(), f.p());

    let i1 = gr_l(f, &l, budget)?;
    let sig = match i1.first() {
        Some(e) => e.signature().clone(),
        None => return Err(BlError::NoBFunction),
    };

    // Step 2: drop Dx and the Dt_j with l_j = 0.
    let mut block: Vec<Generator> = (0..n).map(Generator::Dx).collect();
    block.extend((0..p).filter(|&j| l[j] == 0).map(Generator::Dt));
    let ord = TermOrder::elimination(&block, &TermOrder::grlex(&sig));
    let i2 = eliminate_with(&i1, &block, &ord, budget)?;

    // Step 3: adjoin λ with [t_j, λ] = l_j t_j and λ - L(s), s_j = -Dt_j t_j.
    let lsig = Arc::new(sig.with_lambda(&l)?);
    let mut gens: Vec<WeylElement> = i2.iter().map(|e| e.map_to(&lsig)).collect::<Result<_, _>>()?;
    let mut central = WeylElement::generator(&lsig, Generator::Lambda);
    for j in (0..p).filter(|&j| l[j] > 0) {
        let dt_t = WeylElement::generator(&lsig, Generator::Dt(j)).mul(&WeylElement::generator(&lsig, Generator::T(j)))?;
        central = central.add(&dt_t.scale(&ExactScalar::int(l[j])))?;
    }
    gens.push(central);
    let block3: Vec<Generator> = (0..p)
        .filter(|&j| l[j] > 0)
        .flat_map(|j| [Generator::T(j), Generator::Dt(j)])
        .collect();
    let ord = TermOrder::elimination(&block3, &TermOrder::grlex(&lsig));
    let i3 = eliminate_with(&gens, &block3, &ord, budget)?;

    // Step 4: commutative elimination down to k[λ].
    let locals = local_variables(n, &l);
    let ord = TermOrder::elimination(&locals, &TermOrder::grlex(&lsig));
    let i4 = eliminate_with(&i3, &locals, &ord, budget)?;
    let gen = i4.iter().find(|e| !e.is_zero()).ok_or(BlError::NoBFunction)?;
    let global = FactoredBS::from_lambda_poly(&lambda_poly(gen)).ok_or(BlError::NoBFunction)?;
    let global = monic(global);

    let b = if opts.localize {
        local_strip_with(&global, &i3, &locals, budget)?
    } else {
        global.clone()
    };
    Ok(DirectionalResult {
        l,
        b,
        global,
        localized: opts.localize,
        intermediate: opts.keep_intermediate.then(|| Intermediate { i1, i2, i3, i4 }),
    })
}

/// The variables surviving step 3 other than `λ`: `x` and the `t_j` with `l_j = 0`.
pub fn local_variables(n: usize, l: &[i64]) -> Vec<Generator> {
    let mut v: Vec<Generator> = (0..n).map(Generator::X).collect();
    v.extend((0..l.len()).filter(|&j| l[j] == 0).map(Generator::T));
    v
}

fn monic(b: FactoredBS) -> FactoredBS {
    FactoredBS::from_lambda_poly(&b.expand().monic()).expect("nonzero")
}

/// Read an element of `k[λ]` as a polynomial in variable 0.
pub fn lambda_poly(e: &WeylElement) -> XPoly {
    let li = e.signature().idx(Generator::Lambda);
    XPoly::from_terms(e.terms().iter().map(|(m, c)| (vec![m.get(li) as u32], c.clone())))
}

fn lambda_element(p: &XPoly, sig: &Arc<AlgebraSignature>) -> WeylElement {
    let li = sig.idx(Generator::Lambda);
    let terms = p
        .terms()
        .map(|(e, c)| {
            let mut m = Mono::ONE;
            m.0[li] = e.first().copied().unwrap_or(0) as u16;
            (m, c.clone())
        })
        .collect();
    WeylElement::from_terms(sig, terms)
}

/// Remove irreducible factors of `b` not needed after localizing `I3` at the
/// origin of `localvars`.
pub fn local_strip(b: &FactoredBS, i3: &[WeylElement], localvars: &[Generator]) -> Result<FactoredBS, BlError> {
    local_strip_with(b, i3, localvars, &Budget::default())
}

pub fn local_strip_with(
    b: &FactoredBS,
    i3: &[WeylElement],
    localvars: &[Generator],
    budget: &Budget,
) -> Result<FactoredBS, BlError> {
    let sig = match i3.first() {
        Some(e) => e.signature().clone(),
        None => return Ok(b.clone()),
    };
    let mut cur = b.expand();
    loop {
        let current = FactoredBS::from_lambda_poly(&cur).expect("nonzero");
        let mut candidates: Vec<XPoly> = current
            .factors()
            .map(|(fac, _)| XPoly::var(0).add(&XPoly::constant(ExactScalar::from_rational(fac.a.clone()))))
            .collect();
        if !current.is_split() {
            candidates.push(current.residual().clone());
        }
        let mut stripped = false;
        for q in candidates {
            let rest = cur.div_exact(&q).expect("factor divides");
            if local_membership_with(&lambda_element(&rest, &sig), i3, localvars, budget)? {
                cur = rest;
                stripped = true;
                break;
            }
        }
        if !stripped {
            return Ok(monic(FactoredBS::from_lambda_poly(&cur).expect("nonzero")));
        }
    }
}

/// Outcome of the linear-algebra search.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    Found(FactoredBS),
    NoneBelow(u32),
}

/// The smallest-degree monic `e` with `e(L(s)) ∈ gr^L(I)`, `s_j = -Dt_j t_j`,
/// found by solving for its coefficients degree by degree.
pub fn b_l_oracle(f: &PolyPair, l: &[i64], degree_bound: u32) -> Result<OracleOutcome, BlError> {
    b_l_oracle_with(f, l, degree_bound, &Budget::default())
}

pub fn b_l_oracle_with(f: &PolyPair, l: &[i64], degree_bound: u32, budget: &Budget) -> Result<OracleOutcome, BlError> {
    check_direction(f, l)?;
    if degree_bound == 0 {
        return Ok(OracleOutcome::NoneBelow(0));
    }
    let gr = gr_l(f, l, budget)?;
    let sig = Arc::new(AlgebraSignature::weyl_xt(f.n(), f.p())?);
    let gb = buchberger_with(&gr, &TermOrder::grlex(&sig), budget)?;
    let ls = l_of_s(&sig, l)?;
    let mut powers = vec![gb.normal_form(&WeylElement::one(&sig))?];
    let mut pw = WeylElement::one(&sig);
    for d in 1..=degree_bound {
        pw = pw.mul(&ls)?;
        powers.push(gb.normal_form(&pw)?);
        if let Some(c) = solve_monic(&powers) {
            let mut e = XPoly::monomial(vec![d], ExactScalar::int(1));
            for (k, ck) in c.into_iter().enumerate() {
                e = e.add(&XPoly::monomial(vec![k as u32], ck));
            }
            return Ok(OracleOutcome::Found(FactoredBS::from_lambda_poly(&e).expect("monic")));
        }
    }
    Ok(OracleOutcome::NoneBelow(degree_bound))
}

/// `L(s) = -Σ l_j Dt_j t_j`.
pub fn l_of_s(sig: &Arc<AlgebraSignature>, l: &[i64]) -> Result<WeylElement, BlError> {
    let mut ls = WeylElement::zero(sig);
    for (j, &lj) in l.iter().enumerate() {
        if lj == 0 {
            continue;
        }
        let s = WeylElement::generator(sig, Generator::Dt(j)).mul(&WeylElement::generator(sig, Generator::T(j)))?;
        ls = ls.sub(&s.scale(&ExactScalar::int(lj)))?;
    }
    Ok(ls)
}

/// Does `e(L(s))` reduce to zero modulo `gb`, for `e` given in `λ`?
pub fn annihilates(gb: &MarkedBasis, l: &[i64], e: &XPoly) -> Result<bool, BlError> {
    let sig = gb.signature().clone();
    let ls = l_of_s(&sig, l)?;
    let mut acc = WeylElement::zero(&sig);
    let mut pw = WeylElement::one(&sig);
    let deg = e.total_degree().unwrap_or(0);
    for k in 0..=deg {
        let c = e.coeff(&[k]);
        if !c.is_zero() {
            acc = acc.add(&pw.scale(&c))?;
        }
        pw = pw.mul(&ls)?;
    }
    Ok(gb.contains(&acc)?)
}

/// Coefficients `c_0..c_{d-1}` with `v_d + Σ c_k v_k = 0`, if any.
fn solve_monic(v: &[WeylElement]) -> Option<Vec<ExactScalar>> {
    let d = v.len() - 1;
    let mut monos: Vec<Mono> = Vec::new();
    for e in v {
        for (m, _) in e.terms() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    // Rows: one equation per monomial; columns c_0..c_{d-1} | rhs.
    let mut rows: Vec<Vec<ExactScalar>> = monos
        .iter()
        .map(|m| {
            let mut r: Vec<ExactScalar> = v[..d].iter().map(|e| e.coeff(m)).collect();
            r.push(v[d].coeff(m).neg());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(pr) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        let inv = rows[row][col].inv().expect("nonzero pivot");
        for c in col..=d {
            rows[row][c] = rows[row][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=d {
                    let delta = rows[row][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[d].is_zero()) {
        return None;
    }
    let mut out = vec![ExactScalar::zero(); d];
    for (k, &col) in pivots.iter().enumerate() {
        out[col] = rows[k][d].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests;
