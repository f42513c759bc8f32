//! The candidate Bernstein-Sato polynomial of a pair assembled from the
//! directional polynomials `b_L` on the rays of the restricted fan:
//!
//! `b(s) = ∏_L ∏_{-L(κ+(1,1)) < k ≤ 0} b_L(L(s) - k)`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::bl::{b_l_with, BlError, BlOptions};
use crate::factored::{BsVariable, FactoredBS};
use crate::fan::{kappa, restricted_fan_with, skeleton, FanError, FanOptions};
use crate::groebner::Budget;
use crate::malgrange::{product_check, MalgrangeError, MembershipOracle, PolyPair, ProductCertificate, XPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Bl(#[from] BlError),
    #[error(transparent)]
    Membership(#[from] MalgrangeError),
    #[error("b_L for L = ({0}, {1}) does not split over the rationals")]
    NotSplit(u64, u64),
}

impl ProductError {
    pub fn is_budget_exceeded(&self) -> bool {
        match self {
            ProductError::Fan(e) => e.is_budget_exceeded(),
            ProductError::Bl(e) => e.is_budget_exceeded(),
            ProductError::Membership(e) => e.is_budget_exceeded(),
            ProductError::NotSplit(..) => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProductOptions {
    pub verify: bool,
    pub fan: FanOptions,
    /// Use local `b_L` when every component vanishes at the origin.
    pub localize: bool,
    pub budget: Budget,
}

impl Default for ProductOptions {
    fn default() -> Self {
        ProductOptions {
            verify: false,
            fan: FanOptions::default(),
            localize: true,
            budget: Budget::default(),
        }
    }
}

/// The contribution of one ray.
#[derive(Clone, Debug)]
pub struct RayBlock {
    pub l: (u64, u64),
    pub b_l: FactoredBS,
    pub localized: bool,
    /// The shifts `k`, from `0` downwards.
    pub shifts: Vec<i64>,
    /// `∏_k b_L(L(s) - k)`.
    pub factors: FactoredBS,
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub member: bool,
    /// Number of leading factors (see [`ProductBreakdown::factor_sequence`])
    /// whose product already lies in `B(f)`.
    pub prefix: Option<usize>,
    pub certificate: Option<ProductCertificate>,
    /// `product_check` on the certificate.
    pub replayed: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ProductBreakdown {
    pub rays: Vec<(u64, u64)>,
    pub kappa: (u64, u64),
    pub blocks: Vec<RayBlock>,
    pub product: FactoredBS,
    pub verification: Option<Verification>,
}

/// Integers `k` with `-L(κ + (1,1)) < k ≤ 0`, from `0` down.
pub fn shift_range(l: (u64, u64), kappa: (u64, u64)) -> Vec<i64> {
    let width = (l.0 * (kappa.0 + 1) + l.1 * (kappa.1 + 1)) as i64;
    (0..width).map(|k| -k).collect()
}

pub fn bernstein_candidate(f: &PolyPair, verify: bool) -> Result<ProductBreakdown, ProductError> {
    bernstein_candidate_with(
        f,
        &ProductOptions {
            verify,
            ..ProductOptions::default()
        },
    )
}

pub fn bernstein_candidate_with(f: &PolyPair, opts: &ProductOptions) -> Result<ProductBreakdown, ProductError> {
    let fan = restricted_fan_with(f, &opts.fan)?;
    let rays = skeleton(&fan)?;
    let kappa = kappa(&fan).kappa;
    let localize = opts.localize && f.vanishes_at_origin();
    let bl_opts = BlOptions {
        localize,
        budget: opts.budget.clone(),
        ..BlOptions::default()
    };
    let mut blocks = Vec::new();
    let mut product = FactoredBS::one(BsVariable::S);
    for &l in &rays {
        let b = b_l_with(f, &[l.0 as i64, l.1 as i64], &bl_opts)?.b;
        let shifts = shift_range(l, kappa);
        let mut factors = FactoredBS::one(BsVariable::S);
        for &k in &shifts {
            let part = b.substitute_direction(l, k).ok_or(ProductError::NotSplit(l.0, l.1))?;
            factors = factors.mul(&part);
        }
        product = product.mul(&factors);
        blocks.push(RayBlock {
            l,
            b_l: b,
            localized: localize,
            shifts,
            factors,
        });
    }
    let mut out = ProductBreakdown {
        rays,
        kappa,
        blocks,
        product,
        verification: None,
    };
    if opts.verify {
        let oracle = MembershipOracle::with_budget(f, &opts.budget)?;
        out.verification = Some(verify_candidate(&out, &oracle)?);
    }
    Ok(out)
}

impl ProductBreakdown {
    /// The linear factors of the product, repeated by multiplicity: all
    /// `k = 0` factors first, then `k = -1`, and so on, rays in skeleton
    /// order.
    pub fn factor_sequence(&self) -> Vec<XPoly> {
        let depth = self.blocks.iter().map(|b| b.shifts.len()).max().unwrap_or(0);
        let mut seq = Vec::new();
        for i in 0..depth {
            for blk in &self.blocks {
                let Some(&k) = blk.shifts.get(i) else { continue };
                let part = blk.b_l.substitute_direction(blk.l, k).expect("split when assembled");
                for (lf, m) in part.factors() {
                    let p = lf.expand(BsVariable::S);
                    seq.extend(std::iter::repeat(p).take(m as usize));
                }
            }
        }
        seq
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "l": [b.l.0, b.l.1],
                    "b_l": b.b_l.to_json(),
                    "localized": b.localized,
                    "k_min": b.shifts.last(),
                    "k_max": b.shifts.first(),
                })
            })
            .collect();
        let mut v = json!({
            "rays": self.rays.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "kappa": [self.kappa.0, self.kappa.1],
            "blocks": blocks,
            "degree": self.product.degree(),
            "factors": self.product.factor_json(),
        });
        if let Some(ver) = &self.verification {
            v["verified"] = Value::Bool(ver.member);
            v["certified_prefix"] = json!(ver.prefix);
            v["replayed"] = json!(ver.replayed);
        }
        v
    }
}

/// Membership of the assembled product, with a replayed certificate for the
/// shortest member prefix of [`ProductBreakdown::factor_sequence`].
pub fn verify_candidate(p: &ProductBreakdown, oracle: &MembershipOracle) -> Result<Verification, ProductError> {
    let seq = p.factor_sequence();
    let res = oracle.contains_product(&seq)?;
    let replayed = match &res.certificate {
        Some(c) => Some(product_check(c, oracle.pair())?),
        None => None,
    };
    Ok(Verification {
        member: res.member,
        prefix: res.prefix,
        certificate: res.certificate,
        replayed,
    })
}

#[cfg(test)]
mod tests;
