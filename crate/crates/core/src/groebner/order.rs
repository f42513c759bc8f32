use std::cmp::Ordering;
use std::sync::Arc;

use crate::weyl::{AlgebraSignature, Generator, Mono, WeightVector, MAX_VARS};

use super::GbError;

/// Maximum number of weight rows a term order can carry.
pub const MAX_ROWS: usize = 6;
pub(crate) const KEY_LEN: usize = MAX_ROWS + MAX_VARS;

/// Precomputed sort key: weight rows then exponents in precedence order.
pub(crate) type Key = [i32; KEY_LEN];

/// A monomial order given by weight rows compared in turn, then a
/// lexicographic tie-break along a generator precedence list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    sig: Arc<AlgebraSignature>,
    rows: Vec<[i64; MAX_VARS]>,
    prec: Vec<usize>,
    block: Vec<usize>,
}

fn default_precedence(sig: &AlgebraSignature) -> Vec<usize> {
    crate::weyl::render_precedence(sig)
}

impl TermOrder {
    fn from_rows(sig: &Arc<AlgebraSignature>, rows: Vec<[i64; MAX_VARS]>) -> Self {
        assert!(rows.len() <= MAX_ROWS, "too many weight rows");
        TermOrder {
            sig: sig.clone(),
            rows,
            prec: default_precedence(sig),
            block: Vec::new(),
        }
    }

    fn degree_row(sig: &AlgebraSignature) -> [i64; MAX_VARS] {
        let mut r = [0; MAX_VARS];
        for v in r.iter_mut().take(sig.nvars()) {
            *v = 1;
        }
        r
    }

    /// Total degree, then lex with precedence `Dt > Dx > t > s > x > u > h > lam`.
    pub fn grlex(sig: &Arc<AlgebraSignature>) -> Self {
        Self::from_rows(sig, vec![Self::degree_row(sig)])
    }

    /// A weight vector first, then graded lex.
    pub fn weighted(sig: &Arc<AlgebraSignature>, w: &WeightVector) -> Self {
        let mut row = [0; MAX_VARS];
        row.copy_from_slice(w.as_slice());
        Self::from_rows(sig, vec![row, Self::degree_row(sig)])
    }

    /// The order `≺_L^h` on a homogenized signature: total degree, then the
    /// `V^L` weight, then the degree ignoring `h`, then lex.
    pub fn homogenized_l(sig: &Arc<AlgebraSignature>, l: &[i64]) -> Result<Self, GbError> {
        let hi = sig
            .h_idx()
            .ok_or_else(|| GbError::InadmissibleOrder("V-weights need the h signature".into()))?;
        let mut v = [0; MAX_VARS];
        v.copy_from_slice(WeightVector::v_l(sig, l).as_slice());
        let mut hfree = Self::degree_row(sig);
        hfree[hi] = 0;
        Ok(Self::from_rows(sig, vec![Self::degree_row(sig), v, hfree]))
    }

    /// Same as `inner`, preceded by the degree in `block`.
    pub fn elimination(block: &[Generator], inner: &TermOrder) -> Self {
        let sig = &inner.sig;
        let mut row = [0; MAX_VARS];
        let mut idx = Vec::new();
        for &g in block {
            if let Some(i) = sig.index(g) {
                row[i] = 1;
                idx.push(i);
            }
        }
        idx.sort_unstable();
        let mut rows = vec![row];
        rows.extend(inner.rows.iter().cloned());
        assert!(rows.len() <= MAX_ROWS, "too many weight rows");
        TermOrder {
            sig: sig.clone(),
            rows,
            prec: inner.prec.clone(),
            block: idx,
        }
    }

    /// A copy of this order with a different tie-break precedence.
    pub fn with_precedence(&self, prec: &[Generator]) -> Self {
        let mut p: Vec<usize> = prec.iter().filter_map(|&g| self.sig.index(g)).collect();
        for i in default_precedence(&self.sig) {
            if !p.contains(&i) {
                p.push(i);
            }
        }
        TermOrder {
            prec: p,
            ..self.clone()
        }
    }

    pub fn signature(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn rows(&self) -> &[[i64; MAX_VARS]] {
        &self.rows
    }

    /// Generators eliminated by this order (empty unless built by `elimination`).
    pub fn block(&self) -> Vec<Generator> {
        self.block.iter().map(|&i| self.sig.generator(i)).collect()
    }

    pub(crate) fn block_indices(&self) -> &[usize] {
        &self.block
    }

    pub(crate) fn key(&self, m: &Mono) -> Key {
        let mut k = [0i32; KEY_LEN];
        for (r, row) in self.rows.iter().enumerate() {
            k[r] = m.dot(row) as i32;
        }
        for (q, &i) in self.prec.iter().enumerate() {
            k[MAX_ROWS + q] = m.get(i) as i32;
        }
        k
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Every generator exceeds 1 and every relation's lower terms are smaller
    /// than the commutative product.
    pub fn check_admissible(&self) -> Result<(), GbError> {
        let sig = &self.sig;
        let n = sig.nvars();
        for i in 0..n {
            if self.cmp(&Mono::var(i), &Mono::ONE) != Ordering::Greater {
                return Err(GbError::InadmissibleOrder(format!(
                    "generator {} is not larger than 1",
                    sig.generator(i)
                )));
            }
        }
        let mut buf = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (ma, mb) = (Mono::var(a), Mono::var(b));
                buf.clear();
                crate::weyl::mono_product(sig, &ma, &mb, &mut buf);
                let lead = ma.mul(&mb);
                for (m, _) in buf.iter().skip(1) {
                    if self.cmp(m, &lead) != Ordering::Less {
                        return Err(GbError::InadmissibleOrder(format!(
                            "relation {}*{} has a term not below the product",
                            sig.generator(a),
                            sig.generator(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
