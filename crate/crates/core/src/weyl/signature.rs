use std::fmt;

use crate::weyl::WeylError;

/// Maximum number of generators in a signature.
pub const MAX_VARS: usize = 16;

/// A named generator of an algebra signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(usize),
    T(usize),
    S(usize),
    /// Auxiliary central variable, used for ideal quotients.
    Aux(usize),
    H,
    Dx(usize),
    Dt(usize),
    Lambda,
}

impl Generator {
    /// Derivation-like generators sit to the right in a normal-ordered word.
    pub fn is_derivation_like(self) -> bool {
        matches!(self, Generator::Dx(_) | Generator::Dt(_) | Generator::Lambda)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i) => write!(f, "x{}", i + 1),
            Generator::T(j) => write!(f, "t{}", j + 1),
            Generator::S(j) => write!(f, "s{}", j + 1),
            Generator::Aux(k) => write!(f, "u{}", k + 1),
            Generator::H => write!(f, "h"),
            Generator::Dx(i) => write!(f, "Dx{}", i + 1),
            Generator::Dt(j) => write!(f, "Dt{}", j + 1),
            Generator::Lambda => write!(f, "lam"),
        }
    }
}

/// Which generators exist and how they commute.
///
/// Relations: `[Dx_i, x_i] = 1` and `[Dt_j, t_j] = 1` (both `h^2` when `h` is
/// present), `Dt_j s_j = s_j Dt_j - Dt_j`, and with `λ` and weight `L`,
/// `[t_j, λ] = l_j t_j`, `[Dt_j, λ] = -l_j Dt_j`. Everything else commutes.
///
/// Normal order of a word: `x t s u h | Dx Dt λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    n: usize,
    p: usize,
    t: bool,
    dt: bool,
    s: bool,
    h: bool,
    lambda: Option<Vec<i64>>,
    aux: usize,
    gens: Vec<Generator>,
}

impl AlgebraSignature {
    fn build(
        n: usize,
        p: usize,
        t: bool,
        dt: bool,
        s: bool,
        h: bool,
        lambda: Option<Vec<i64>>,
        aux: usize,
    ) -> Result<Self, WeylError> {
        if s && t {
            return Err(WeylError::BadSignature("s and t cannot coexist".into()));
        }
        if lambda.is_some() && !(t && dt) {
            return Err(WeylError::BadSignature("lambda needs t and Dt".into()));
        }
        if let Some(l) = &lambda {
            if l.len() != p {
                return Err(WeylError::BadSignature("L must have p entries".into()));
            }
        }
        let mut gens = Vec::new();
        gens.extend((0..n).map(Generator::X));
        if t {
            gens.extend((0..p).map(Generator::T));
        }
        if s {
            gens.extend((0..p).map(Generator::S));
        }
        gens.extend((0..aux).map(Generator::Aux));
        if h {
            gens.push(Generator::H);
        }
        gens.extend((0..n).map(Generator::Dx));
        if dt {
            gens.extend((0..p).map(Generator::Dt));
        }
        if lambda.is_some() {
            gens.push(Generator::Lambda);
        }
        if gens.len() > MAX_VARS {
            return Err(WeylError::BadSignature(format!(
                "{} generators exceed the limit of {}",
                gens.len(),
                MAX_VARS
            )));
        }
        Ok(AlgebraSignature {
            n,
            p,
            t,
            dt,
            s,
            h,
            lambda,
            aux,
            gens,
        })
    }

    /// The Weyl algebra in `x1..xn, t1..tp`.
    pub fn weyl_xt(n: usize, p: usize) -> Result<Self, WeylError> {
        Self::build(n, p, true, true, false, false, None, 0)
    }

    /// `D<s, Dt>`: x, s, Dx, Dt without t.
    pub fn s_dt(n: usize, p: usize) -> Result<Self, WeylError> {
        Self::build(n, p, false, true, true, false, None, 0)
    }

    /// `D[s]`: x, s, Dx.
    pub fn d_s(n: usize, p: usize) -> Result<Self, WeylError> {
        Self::build(n, p, false, false, true, false, None, 0)
    }

    pub fn with_h(&self) -> Result<Self, WeylError> {
        Self::build(self.n, self.p, self.t, self.dt, self.s, true, self.lambda.clone(), self.aux)
    }

    pub fn without_h(&self) -> Result<Self, WeylError> {
        Self::build(self.n, self.p, self.t, self.dt, self.s, false, self.lambda.clone(), self.aux)
    }

    pub fn with_lambda(&self, l: &[i64]) -> Result<Self, WeylError> {
        Self::build(self.n, self.p, self.t, self.dt, self.s, self.h, Some(l.to_vec()), self.aux)
    }

    pub fn with_aux(&self, aux: usize) -> Result<Self, WeylError> {
        Self::build(self.n, self.p, self.t, self.dt, self.s, self.h, self.lambda.clone(), aux)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn has_t(&self) -> bool {
        self.t
    }
    pub fn has_dt(&self) -> bool {
        self.dt
    }
    pub fn has_s(&self) -> bool {
        self.s
    }
    pub fn has_h(&self) -> bool {
        self.h
    }
    pub fn lambda_weights(&self) -> Option<&[i64]> {
        self.lambda.as_deref()
    }
    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, idx: usize) -> Generator {
        self.gens[idx]
    }

    pub fn index(&self, g: Generator) -> Option<usize> {
        self.gens.iter().position(|&x| x == g)
    }

    pub fn idx(&self, g: Generator) -> usize {
        self.index(g)
            .unwrap_or_else(|| panic!("generator {} not in signature", g))
    }

    pub(crate) fn x_idx(&self, i: usize) -> usize {
        i
    }
    pub(crate) fn t_idx(&self, j: usize) -> Option<usize> {
        self.t.then(|| self.n + j)
    }
    pub(crate) fn s_idx(&self, j: usize) -> Option<usize> {
        self.s.then(|| self.n + j)
    }
    pub(crate) fn h_idx(&self) -> Option<usize> {
        self.h.then(|| self.n + if self.t || self.s { self.p } else { 0 } + self.aux)
    }
    pub(crate) fn dx_idx(&self, i: usize) -> usize {
        self.n + if self.t || self.s { self.p } else { 0 } + self.aux + self.h as usize + i
    }
    pub(crate) fn dt_idx(&self, j: usize) -> Option<usize> {
        self.dt.then(|| self.dx_idx(self.n) + j)
    }
    pub(crate) fn lambda_idx(&self) -> Option<usize> {
        self.lambda.as_ref().map(|_| self.gens.len() - 1)
    }

    /// First index of the derivation-like block.
    pub(crate) fn deriv_start(&self) -> usize {
        self.dx_idx(0)
    }

    /// Whether two generators commute.
    pub fn commutes(&self, a: Generator, b: Generator) -> bool {
        use Generator::*;
        let l = |j: usize| self.lambda.as_ref().map(|v| v[j]).unwrap_or(0);
        match (a, b) {
            (X(i), Dx(k)) | (Dx(k), X(i)) => i != k,
            (T(j), Dt(k)) | (Dt(k), T(j)) => j != k,
            (S(j), Dt(k)) | (Dt(k), S(j)) => j != k,
            (T(j), Lambda) | (Lambda, T(j)) => l(j) == 0,
            (Dt(j), Lambda) | (Lambda, Dt(j)) => l(j) == 0,
            _ => true,
        }
    }

    /// True if the generators with nonzero exponent in `used` pairwise commute.
    pub fn is_commutative_on(&self, used: &[bool]) -> bool {
        for a in 0..self.nvars() {
            if !used[a] {
                continue;
            }
            for b in a + 1..self.nvars() {
                if used[b] && !self.commutes(self.gens[a], self.gens[b]) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", names.join(", "))?;
        if let Some(l) = &self.lambda {
            write!(f, " L={:?}", l)?;
        }
        Ok(())
    }
}
