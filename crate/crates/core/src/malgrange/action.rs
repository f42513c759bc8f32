//! Applying operators of `D[s]` to `f^{s+1}` by the product rule.
//!
//! A value `N(x, s) F^{-k} f^{s+1}` is held as the pair `(N, k)`, with the
//! parameters `s_j` as extra polynomial variables after `x1..xn`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::scalars::ExactScalar;
use crate::weyl::{AlgebraSignature, Generator, Mono, WeylElement};

use super::{s_poly_to_weyl, x_poly_to_weyl, Certificate, MalgrangeError, PolyPair, XPoly};

struct Ctx {
    /// `F` and `∂F/∂x_i`, `Σ_j (s_j + e) ∂f_j/∂x_i · F/f_j`, in x and s.
    big_f: XPoly,
    d_big_f: Vec<XPoly>,
    log_term: Vec<XPoly>,
}

impl Ctx {
    fn new(f: &PolyPair, offset: i64) -> Self {
        let n = f.n();
        let s = |j: usize| XPoly::var(n + j);
        let big_f = f.product().clone();
        let d_big_f = (0..n).map(|i| big_f.derivative(i)).collect();
        let log_term = (0..n)
            .map(|i| {
                let mut acc = XPoly::zero();
                for j in 0..f.p() {
                    let others = (0..f.p())
                        .filter(|&k| k != j)
                        .fold(XPoly::one(), |a, k| a.mul(f.f(k)));
                    let sj1 = s(j).add(&XPoly::constant(ExactScalar::int(offset)));
                    acc = acc.add(&sj1.mul(f.partial(j, i)).mul(&others));
                }
                acc
            })
            .collect();
        Ctx {
            big_f,
            d_big_f,
            log_term,
        }
    }

    /// `∂_i (N F^{-k} f^{s+1})`, returned with exponent `k + 1`.
    fn d(&self, i: usize, num: &XPoly, k: u32) -> XPoly {
        let a = num.derivative(i).mul(&self.big_f);
        let b = num.mul(&self.d_big_f[i]).scale(&ExactScalar::int(k as i64));
        let c = num.mul(&self.log_term[i]);
        a.sub(&b).add(&c)
    }
}

fn x_s_part(p: &PolyPairView, m: &Mono) -> (Vec<u32>, Vec<u16>) {
    let mut e = vec![0u32; p.n + p.p];
    let mut d = vec![0u16; p.n];
    for (idx, g) in p.gens.iter().enumerate() {
        let k = m.get(idx);
        if k == 0 {
            continue;
        }
        match *g {
            Generator::X(i) => e[i] = k as u32,
            Generator::S(j) => e[p.n + j] = k as u32,
            Generator::Dx(i) => d[i] = k,
            _ => unreachable!("checked by caller"),
        }
    }
    (e, d)
}

struct PolyPairView {
    n: usize,
    p: usize,
    gens: Vec<Generator>,
}

/// `P f^{s+1} = N F^{-k} f^{s+1}`, returned as `(N, k)`.
pub fn apply_to_power(op: &WeylElement, f: &PolyPair) -> Result<(XPoly, u32), MalgrangeError> {
    apply_to_shifted_power(op, f, 1)
}

/// `P f^{s+e} = N F^{-k} f^{s+e}` with `f^{s+e} = ∏ f_j^{s_j+e}`.
pub fn apply_to_shifted_power(op: &WeylElement, f: &PolyPair, e: i64) -> Result<(XPoly, u32), MalgrangeError> {
    let sig = op.signature();
    if sig.has_t() || sig.has_dt() || sig.has_h() || sig.lambda_weights().is_some() || sig.aux() > 0 {
        return Err(MalgrangeError::BadCertificate("operator must lie in D[s]".into()));
    }
    if sig.n() != f.n() || (sig.has_s() && sig.p() != f.p()) {
        return Err(MalgrangeError::BadCertificate("operator and f disagree on n or p".into()));
    }
    let view = PolyPairView {
        n: f.n(),
        p: f.p(),
        gens: sig.generators().to_vec(),
    };
    let ctx = Ctx::new(f, e);
    let mut cache: HashMap<Vec<u16>, XPoly> = HashMap::new();
    cache.insert(vec![0; f.n()], XPoly::one());
    let mut grouped: HashMap<Vec<u16>, XPoly> = HashMap::new();
    for (m, c) in op.terms() {
        let (e, d) = x_s_part(&view, m);
        let entry = grouped.entry(d).or_insert_with(XPoly::zero);
        *entry = entry.add(&XPoly::monomial(e, c.clone()));
    }
    let mut keys: Vec<Vec<u16>> = grouped.keys().cloned().collect();
    keys.sort();
    let top = keys
        .iter()
        .map(|d| d.iter().map(|&v| v as u32).sum::<u32>())
        .max()
        .unwrap_or(0);
    let mut total = XPoly::zero();
    for d in &keys {
        let nd = derive(&ctx, &mut cache, d);
        let k = d.iter().map(|&v| v as u32).sum::<u32>();
        let lifted = nd.mul(&ctx.big_f.pow(top - k));
        total = total.add(&grouped[d].mul(&lifted));
    }
    Ok((total, top))
}

fn derive(ctx: &Ctx, cache: &mut HashMap<Vec<u16>, XPoly>, d: &[u16]) -> XPoly {
    if let Some(v) = cache.get(d) {
        return v.clone();
    }
    let i = d.iter().rposition(|&v| v > 0).expect("nonzero multi-index");
    let mut prev = d.to_vec();
    prev[i] -= 1;
    let base = derive(ctx, cache, &prev);
    let k = prev.iter().map(|&v| v as u32).sum::<u32>();
    let r = ctx.d(i, &base, k);
    cache.insert(d.to_vec(), r.clone());
    r
}

/// Replay a certificate: does `P f^{s+1}` equal `b(s) f^s`?
///
/// With a trace this checks `b = Σ q g`, `P = Σ q c` and `g f^s = c F f^s`
/// for each generator used; otherwise `P` is applied to `f^{s+1}` directly.
pub fn action_check(cert: &Certificate, f: &PolyPair) -> Result<bool, MalgrangeError> {
    if cert.b.nvars() > f.p() {
        return Err(MalgrangeError::BadCertificate("b mentions more than p variables".into()));
    }
    if !cert.trace.is_empty() {
        return trace_check(cert, f);
    }
    let n = f.n();
    // b as a polynomial in x and s: shift s-variables past x.
    let b = XPoly::from_terms(cert.b.terms().map(|(e, c)| {
        let mut v = vec![0u32; n];
        v.extend(e.iter().copied());
        (v, c.clone())
    }));
    replay(&cert.operator, &b, f)
}

fn trace_check(cert: &Certificate, f: &PolyPair) -> Result<bool, MalgrangeError> {
    let sig = Arc::new(AlgebraSignature::d_s(f.n(), f.p())?);
    if cert.operator.signature() != &sig {
        return Err(MalgrangeError::BadCertificate("operator must lie in D[s]".into()));
    }
    let mut sum = WeylElement::zero(&sig);
    let mut op = WeylElement::zero(&sig);
    for (i, q) in &cert.trace {
        let (g, c) = cert
            .generators
            .get(i)
            .ok_or_else(|| MalgrangeError::BadCertificate(format!("unknown generator {i}")))?;
        if q.signature() != &sig || g.signature() != &sig || c.signature() != &sig {
            return Err(MalgrangeError::BadCertificate("operators must lie in D[s]".into()));
        }
        sum = sum.add(&q.mul(g)?)?;
        op = op.add(&q.mul(c)?)?;
    }
    if sum != s_poly_to_weyl(&cert.b, &sig) || op != cert.operator {
        return Ok(false);
    }
    let big_f = x_poly_to_weyl(f.product(), &sig);
    for (g, c) in cert.generators.values() {
        if !apply_to_shifted_power(&g.sub(&c.mul(&big_f)?)?, f, 0)?.0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does `P f^{s+1}` equal `r f^s`, for `r` a polynomial in `x1..xn, s1..sp`?
pub fn replay(op: &WeylElement, r: &XPoly, f: &PolyPair) -> Result<bool, MalgrangeError> {
    let (num, k) = apply_to_power(op, f)?;
    let big_f = f.product();
    // N F^{-k} f^{s+1} = r F^{-1} f^{s+1}
    Ok(if k >= 1 {
        num == r.mul(&big_f.pow(k - 1))
    } else {
        num.mul(big_f) == *r
    })
}
