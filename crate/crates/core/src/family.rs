//! Pairs `f1 = c1 x1^a + c2 x2^b + g1`, `f2 = c3 x1^c + c4 x2^d + g2` with
//! quasi-homogeneous principal parts, and their closed-form generic
//! Bernstein-Sato polynomial.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::factored::{BsVariable, FactoredBS, LinearFactor};
use crate::groebner::Budget;
use crate::malgrange::{action_check, Certificate, MalgrangeError, MembershipOracle, PolyPair, XPoly};
use crate::poly::{rational_to_string, Coeff};
use crate::scalars::ExactScalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("rho of the zero polynomial")]
    ZeroElement,
    #[error(transparent)]
    Membership(#[from] MalgrangeError),
}

impl FamilyError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, FamilyError::Membership(e) if e.is_budget_exceeded())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    /// `c1..c4`, possibly depending on parameters.
    pub coeffs: [ExactScalar; 4],
    pub g1: XPoly,
    pub g2: XPoly,
}

/// Minimal `α`-degree of the monomials of `p`.
pub fn rho(p: &XPoly, alpha: (u32, u32)) -> Result<i64, FamilyError> {
    p.terms()
        .map(|(e, _)| alpha_degree(e, alpha))
        .min()
        .ok_or(FamilyError::ZeroElement)
}

fn alpha_degree(e: &[u32], alpha: (u32, u32)) -> i64 {
    let g = |i: usize| e.get(i).copied().unwrap_or(0) as i64;
    g(0) * alpha.0 as i64 + g(1) * alpha.1 as i64
}

/// `{α·(i, j) : i, j ≥ 0, α·(i, j) ≤ bound}`.
pub fn weight_set(alpha: (u32, u32), bound: i64) -> BTreeSet<i64> {
    let (p, q) = (alpha.0 as i64, alpha.1 as i64);
    let mut out = BTreeSet::new();
    let mut i = 0;
    while i * p <= bound {
        let mut j = 0;
        while i * p + j * q <= bound {
            out.insert(i * p + j * q);
            j += 1;
        }
        i += 1;
    }
    out
}

fn mono(c: &ExactScalar, i: u32, j: u32) -> XPoly {
    XPoly::monomial(vec![i, j], c.clone())
}

impl FamilySpec {
    /// All `c_i = 1`, no tails.
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        FamilySpec {
            a,
            b,
            c,
            d,
            coeffs: std::array::from_fn(|_| ExactScalar::int(1)),
            g1: XPoly::zero(),
            g2: XPoly::zero(),
        }
    }

    pub fn alpha1(&self) -> (u32, u32) {
        (self.b, self.a)
    }

    pub fn alpha2(&self) -> (u32, u32) {
        (self.d, self.c)
    }

    pub fn n1(&self) -> i64 {
        let (a, b, d) = (self.a as i64, self.b as i64, self.d as i64);
        2 * a * b + a * d - 2 * a - 2 * b
    }

    pub fn n2(&self) -> i64 {
        let (a, c, d) = (self.a as i64, self.c as i64, self.d as i64);
        2 * c * d + a * d - 2 * c - 2 * d
    }

    fn principal1(&self) -> XPoly {
        mono(&self.coeffs[0], self.a, 0).add(&mono(&self.coeffs[1], 0, self.b))
    }

    fn principal2(&self) -> XPoly {
        mono(&self.coeffs[2], self.c, 0).add(&mono(&self.coeffs[3], 0, self.d))
    }

    pub fn f1(&self) -> XPoly {
        self.principal1().add(&self.g1)
    }

    pub fn f2(&self) -> XPoly {
        self.principal2().add(&self.g2)
    }

    /// The pair over the parameter field.
    pub fn pair(&self) -> Result<PolyPair, FamilyError> {
        Ok(PolyPair::new(vec![self.f1(), self.f2()], Some(2))?)
    }

    /// `C(y) = c1 c2 c3 c4`.
    pub fn c_of_y(&self) -> ExactScalar {
        self.coeffs.iter().fold(ExactScalar::int(1), |acc, c| acc.mul(c))
    }

    pub fn nparams(&self) -> usize {
        let tails = [&self.g1, &self.g2]
            .into_iter()
            .flat_map(|g| g.terms().map(|(_, c)| c.nparams()))
            .max()
            .unwrap_or(0);
        self.coeffs.iter().map(|c| c.nparams()).max().unwrap_or(0).max(tails)
    }

    pub fn w1(&self) -> Result<BTreeSet<i64>, FamilyError> {
        Ok(weight_set(self.alpha1(), self.n1() + rho(&self.f2(), self.alpha1())?))
    }

    pub fn w2(&self) -> Result<BTreeSet<i64>, FamilyError> {
        Ok(weight_set(self.alpha2(), self.n2() + rho(&self.f1(), self.alpha2())?))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let (bc, ad) = (self.b as i64 * self.c as i64, self.a as i64 * self.d as i64);
        checks.push(Check {
            name: "bc > ad",
            passed: bc > ad,
            detail: format!("bc = {bc}, ad = {ad}"),
        });
        checks.push(Check {
            name: "exponents positive",
            passed: [self.a, self.b, self.c, self.d].iter().all(|&v| v > 0),
            detail: format!("(a, b, c, d) = ({}, {}, {}, {})", self.a, self.b, self.c, self.d),
        });
        let c = self.c_of_y();
        checks.push(Check {
            name: "C(y) != 0",
            passed: !Coeff::is_zero(&c),
            detail: format!("C(y) = {c}"),
        });
        for (i, g, p, alpha) in [
            (1, &self.g1, self.principal1(), self.alpha1()),
            (2, &self.g2, self.principal2(), self.alpha2()),
        ] {
            let rf = rho(&p, alpha).unwrap_or(0);
            let (passed, detail) = match rho(g, alpha) {
                Ok(rg) => (rg > rf, format!("rho(g{i}) = {rg}, rho(f{i}) = {rf}")),
                Err(_) => (true, format!("g{i} = 0")),
            };
            checks.push(Check {
                name: if i == 1 { "rho(g1) > rho(f1)" } else { "rho(g2) > rho(f2)" },
                passed,
                detail,
            });
        }
        ValidationReport { checks }
    }

    /// `(s1+1)(s2+1) ∏_{W1} (ab s1 + ad s2 + a + b + ρ) ∏_{W2} (ad s1 + cd s2 + c + d + ρ)`.
    pub fn explicit_b(&self) -> Result<FactoredBS, FamilyError> {
        let report = self.validate();
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(FamilyError::HypothesisViolated(format!("{}: {}", bad.name, bad.detail)));
        }
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let mut out = FactoredBS::one(BsVariable::S);
        out.push(LinearFactor::s(1, 0, q(1)), 1);
        out.push(LinearFactor::s(0, 1, q(1)), 1);
        for r in self.w1()? {
            out.push(LinearFactor::s(a * b, a * d, q((a + b) as i64 + r)), 1);
        }
        for r in self.w2()? {
            out.push(LinearFactor::s(a * d, c * d, q((c + d) as i64 + r)), 1);
        }
        Ok(out)
    }

    /// The family read through `x1 ↔ x2`, `f1 ↔ f2`.
    pub fn swapped(&self) -> Self {
        let swap = |g: &XPoly| {
            XPoly::from_terms(g.terms().map(|(e, c)| {
                let v = |i: usize| e.get(i).copied().unwrap_or(0);
                (vec![v(1), v(0)], c.clone())
            }))
        };
        let [c1, c2, c3, c4] = self.coeffs.clone();
        FamilySpec {
            a: self.d,
            b: self.c,
            c: self.b,
            d: self.a,
            coeffs: [c4, c3, c2, c1],
            g1: swap(&self.g2),
            g2: swap(&self.g1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Numerators lie in `[-bound, bound]`, denominators in `[1, bound]`.
    pub bound: i64,
    pub budget: Budget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 1,
            seed: 0,
            bound: 5,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrialRow {
    pub trial: usize,
    /// Values of `y1, y2, …`.
    pub point: Vec<BigRational>,
    /// Points discarded because `C` vanished (or a coefficient had a pole).
    pub redraws: usize,
    pub member: bool,
    pub replayed: Option<bool>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub b: FactoredBS,
    pub rows: Vec<TrialRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.member && r.replayed == Some(true))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "trial": r.trial,
                    "point": r.point.iter().map(rational_to_string).collect::<Vec<_>>(),
                    "redraws": r.redraws,
                    "member": r.member,
                    "replayed": r.replayed,
                })
            })
            .collect();
        json!({"b": self.b.to_json(), "passed": self.passed(), "trials": rows})
    }
}

fn draw(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    BigRational::new(n.into(), d.into())
}

fn specialize_point(spec: &FamilySpec, pt: &[BigRational]) -> Option<PolyPair> {
    let point: BTreeMap<usize, BigRational> = pt.iter().cloned().enumerate().collect();
    let c = spec.c_of_y().specialize(&point).ok()?;
    if Coeff::is_zero(&c) {
        return None;
    }
    spec.pair().ok()?.specialize(&point).ok()
}

pub fn generic_verify(spec: &FamilySpec, opts: &VerifyOptions) -> Result<VerifyReport, FamilyError> {
    generic_verify_using(spec, opts, None)
}

/// As [`generic_verify`]; trials whose specialized pair equals the pair of
/// `cached` reuse it instead of recomputing a basis.
pub fn generic_verify_using(
    spec: &FamilySpec,
    opts: &VerifyOptions,
    cached: Option<&MembershipOracle>,
) -> Result<VerifyReport, FamilyError> {
    let b = spec.explicit_b()?;
    let bx = b.expand();
    let m = spec.nparams();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    let mut local: Option<MembershipOracle> = None;
    for trial in 0..opts.trials {
        let mut redraws = 0;
        let (point, pair) = loop {
            let pt: Vec<BigRational> = (0..m).map(|_| draw(&mut rng, opts.bound)).collect();
            match specialize_point(spec, &pt) {
                Some(p) => break (pt, p),
                None => redraws += 1,
            }
        };
        let oracle = match (cached, &local) {
            (Some(o), _) if o.pair() == &pair => o,
            (_, Some(o)) if o.pair() == &pair => o,
            _ => local.insert(MembershipOracle::with_budget(&pair, &opts.budget)?),
        };
        let res = oracle.contains(&bx)?;
        let replayed = match &res.certificate {
            Some(c) => Some(action_check(c, &pair)?),
            None => None,
        };
        rows.push(TrialRow {
            trial,
            point,
            redraws,
            member: res.member,
            replayed,
            certificate: res.certificate,
        });
    }
    Ok(VerifyReport { b, rows })
}
