use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::signature::{AlgebraSignature, MAX_VARS};

/// Exponent vector of a normal-ordered word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = [0u16; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Mono(m)
    }

    pub fn var(idx: usize) -> Self {
        let mut m = Mono::ONE;
        m.0[idx] = 1;
        m
    }

    #[inline]
    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i] + other.0[i];
        }
        Mono(r)
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i] - other.0[i];
        }
        Mono(r)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            r[i] = self.0[i].max(other.0[i]);
        }
        Mono(r)
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut m = 0u32;
        for i in 0..MAX_VARS {
            if self.0[i] > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        w.iter()
            .zip(self.0.iter())
            .map(|(a, &e)| a * e as i64)
            .sum()
    }

    pub fn render(&self, sig: &AlgebraSignature) -> String {
        let parts: Vec<String> = (0..sig.nvars())
            .filter(|&i| self.0[i] > 0)
            .map(|i| {
                let g = sig.generator(i);
                if self.0[i] == 1 {
                    g.to_string()
                } else {
                    format!("{}^{}", g, self.0[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e > 0).map(|i| i + 1).unwrap_or(0);
        write!(f, "{:?}", &self.0[..last])
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// One independent reordering factor: options as (exponent adjustments, coefficient).
type Options = Vec<(Vec<(usize, i32)>, BigInt)>;

/// Whether `a * b` equals the commutative product with coefficient one.
#[inline]
pub fn product_is_trivial(sig: &AlgebraSignature, a: &Mono, b: &Mono) -> bool {
    let ds = sig.deriv_start();
    if a.0[ds..].iter().all(|&e| e == 0) {
        return true;
    }
    for i in 0..sig.n() {
        if a.0[sig.dx_idx(i)] > 0 && b.0[sig.x_idx(i)] > 0 {
            return false;
        }
    }
    for j in 0..sig.p() {
        if let Some(dj) = sig.dt_idx(j) {
            if a.0[dj] > 0 {
                if let Some(tj) = sig.t_idx(j) {
                    if b.0[tj] > 0 {
                        return false;
                    }
                }
                if let Some(sj) = sig.s_idx(j) {
                    if b.0[sj] > 0 {
                        return false;
                    }
                }
            }
        }
    }
    if let Some(li) = sig.lambda_idx() {
        if a.0[li] > 0 && lambda_shift(sig, b) != 0 {
            return false;
        }
    }
    true
}

fn lambda_shift(sig: &AlgebraSignature, b: &Mono) -> i64 {
    let l = sig.lambda_weights().expect("lambda signature");
    (0..sig.p())
        .map(|j| {
            let e = b.0[sig.dt_idx(j).unwrap()] as i64;
            let t = b.0[sig.t_idx(j).unwrap()] as i64;
            l[j] * (e - t)
        })
        .sum()
}

/// Normal-ordered product of two words, appended to `out`.
///
/// The first entry pushed is always the commutative product with coefficient 1.
pub fn mono_product(sig: &AlgebraSignature, a: &Mono, b: &Mono, out: &mut Vec<(Mono, BigInt)>) {
    let base = a.mul(b);
    if product_is_trivial(sig, a, b) {
        out.push((base, BigInt::one()));
        return;
    }
    let h = sig.h_idx();
    let mut factors: Vec<Options> = Vec::new();
    let weyl_pair = |pos: usize, der: usize| -> Options {
        let d = a.0[der] as u32;
        let c = b.0[pos] as u32;
        (0..=d.min(c))
            .map(|k| {
                let mut adj = vec![(pos, -(k as i32)), (der, -(k as i32))];
                if let Some(hi) = h {
                    adj.push((hi, 2 * k as i32));
                }
                (adj, factorial(k) * binomial(d, k) * binomial(c, k))
            })
            .collect()
    };
    for i in 0..sig.n() {
        let (p, d) = (sig.x_idx(i), sig.dx_idx(i));
        if a.0[d] > 0 && b.0[p] > 0 {
            factors.push(weyl_pair(p, d));
        }
    }
    for j in 0..sig.p() {
        let Some(dj) = sig.dt_idx(j) else { continue };
        if a.0[dj] == 0 {
            continue;
        }
        if let Some(tj) = sig.t_idx(j) {
            if b.0[tj] > 0 {
                factors.push(weyl_pair(tj, dj));
            }
        }
        if let Some(sj) = sig.s_idx(j) {
            let g = b.0[sj] as u32;
            if g > 0 {
                // Dt^e s^g = (s - e)^g Dt^e
                let e = -BigInt::from(a.0[dj]);
                factors.push(
                    (0..=g)
                        .rev()
                        .map(|i| {
                            let c = binomial(g, i) * num_traits::pow(e.clone(), (g - i) as usize);
                            (vec![(sj, -((g - i) as i32))], c)
                        })
                        .collect(),
                );
            }
        }
    }
    if let Some(li) = sig.lambda_idx() {
        let f1 = a.0[li] as u32;
        let delta = lambda_shift(sig, b);
        if f1 > 0 && delta != 0 {
            // λ^f w = w (λ + δ)^f
            let dl = BigInt::from(delta);
            factors.push(
                (0..=f1)
                    .rev()
                    .map(|i| {
                        let c = binomial(f1, i) * num_traits::pow(dl.clone(), (f1 - i) as usize);
                        (vec![(li, -((f1 - i) as i32))], c)
                    })
                    .collect(),
            );
        }
    }
    // Cartesian product of the options; choice 0 of every factor is the identity
    // option, so the commutative product comes first.
    let mut idx = vec![0usize; factors.len()];
    loop {
        let mut m = base;
        let mut c = BigInt::one();
        for (f, &k) in factors.iter().zip(idx.iter()) {
            let (adj, coef) = &f[k];
            for &(v, d) in adj {
                m.0[v] = (m.0[v] as i32 + d) as u16;
            }
            c *= coef;
        }
        if !c.is_zero() {
            out.push((m, c));
        }
        let mut pos = 0;
        loop {
            if pos == factors.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < factors[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
