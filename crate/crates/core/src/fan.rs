//! The Gröbner fan of `h(I)` restricted to the quadrant of directions
//! `(l1, l2)`, its rays, and the shift bound `κ`.

use num_rational::Rational64;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groebner::{groebner_cone, homogenized_ideal, l_basis, ray_of, tau_of, Budget, GbError, GroebnerCone, MarkedBasis};
use crate::malgrange::{malgrange_ideal, PolyPair};
use crate::weyl::{WeightVector, WeylElement};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FanError {
    #[error("the fan needs exactly two functions, got {0}")]
    NotPair(usize),
    #[error("more than {0} cones explored")]
    FanBudgetExceeded(usize),
    #[error("the fan has no cones")]
    EmptyFan,
    #[error("cones overlap near τ = {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Groebner(#[from] GbError),
}

impl FanError {
    pub fn is_budget_exceeded(&self) -> bool {
        match self {
            FanError::FanBudgetExceeded(_) => true,
            FanError::Groebner(e) => e.is_budget_exceeded(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FanOptions {
    /// Maximum number of bases computed while covering the quadrant.
    pub max_cones: usize,
    /// Report the axes `(1,0)` and `(0,1)` among the rays.
    pub include_boundary: bool,
    /// Cover the quadrant from `(0,1)` towards `(1,0)` instead.
    pub reverse: bool,
    pub budget: Budget,
}

impl Default for FanOptions {
    fn default() -> Self {
        FanOptions {
            max_cones: 64,
            include_boundary: true,
            reverse: false,
            budget: Budget::default(),
        }
    }
}

/// A maximal cone with an interior integer direction and its basis.
#[derive(Clone, Debug)]
pub struct FanCone {
    pub cone: GroebnerCone,
    pub witness: (i64, i64),
    pub basis: MarkedBasis,
}

#[derive(Clone, Debug)]
pub struct RestrictedFan {
    /// Ordered by increasing `τ = l2/(l1+l2)`.
    pub cones: Vec<FanCone>,
    pub include_boundary: bool,
    /// Number of bases computed, walls included.
    pub explored: usize,
}

fn direction(tau: Rational64) -> (i64, i64) {
    let (a, b) = ray_of(tau);
    (a as i64, b as i64)
}

/// Where the wall `a*l1 + b*l2 = 0` meets the segment `τ ∈ [0, 1]`.
fn breakpoint(a: i64, b: i64) -> Option<Rational64> {
    let k = b - a;
    if k == 0 {
        return None;
    }
    let t = Rational64::new(-a, k);
    (t > Rational64::from_integer(0) && t < Rational64::from_integer(1)).then_some(t)
}

pub fn restricted_fan(f: &PolyPair) -> Result<RestrictedFan, FanError> {
    restricted_fan_with(f, &FanOptions::default())
}

pub fn restricted_fan_with(f: &PolyPair, opts: &FanOptions) -> Result<RestrictedFan, FanError> {
    if f.p() != 2 {
        return Err(FanError::NotPair(f.p()));
    }
    let hgens = homogenized_ideal(&malgrange_ideal(f), &opts.budget)?;
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let mut gaps: Vec<(Rational64, Rational64)> = vec![(zero, one)];
    let mut cones: Vec<FanCone> = Vec::new();
    let mut walls: Vec<Rational64> = Vec::new();
    let mut explored = 0usize;
    let mut next = Some(Rational64::new(1, 2));

    loop {
        let gap = if opts.reverse { gaps.last() } else { gaps.first() };
        let Some(&(a, b)) = gap else { break };
        let tau = match next.take() {
            Some(t) => t,
            // Half way to the nearest known wall inside the gap.
            None if opts.reverse => {
                let stop = walls.iter().copied().filter(|&w| w > a && w < b).fold(a, |m, w| m.max(w));
                b - (b - stop) / 2
            }
            None => {
                let stop = walls.iter().copied().filter(|&w| w > a && w < b).fold(b, |m, w| m.min(w));
                a + (stop - a) / 2
            }
        };
        explored += 1;
        if explored > opts.max_cones {
            return Err(FanError::FanBudgetExceeded(opts.max_cones));
        }
        let l = direction(tau);
        let basis = l_basis(&hgens, &[l.0, l.1], &opts.budget)?;
        let cone = groebner_cone(&basis);
        for &(ca, cb) in &cone.constraints {
            if let Some(t) = breakpoint(ca, cb) {
                if !walls.contains(&t) {
                    walls.push(t);
                }
            }
        }
        if !cone.is_full_dimensional() {
            if !walls.contains(&tau) {
                walls.push(tau);
            }
            continue;
        }
        if cone.lower > tau || cone.upper < tau {
            return Err(FanError::Inconsistent(tau.to_string()));
        }
        let k = gaps
            .iter()
            .position(|&(ga, gb)| ga <= tau && tau <= gb)
            .ok_or_else(|| FanError::Inconsistent(tau.to_string()))?;
        let (ga, gb) = gaps[k];
        if cone.lower < ga || cone.upper > gb {
            return Err(FanError::Inconsistent(tau.to_string()));
        }
        let mut pieces = Vec::new();
        if ga < cone.lower {
            pieces.push((ga, cone.lower));
        }
        if cone.upper < gb {
            pieces.push((cone.upper, gb));
        }
        gaps.splice(k..=k, pieces);
        let mid = (cone.lower + cone.upper) / 2;
        cones.push(FanCone {
            witness: direction(mid),
            cone,
            basis,
        });
    }
    cones.sort_by(|x, y| x.cone.lower.cmp(&y.cone.lower));
    Ok(RestrictedFan {
        cones,
        include_boundary: opts.include_boundary,
        explored,
    })
}

/// Distinct rays of the cones, by increasing slope `l2/l1`.
pub fn skeleton(fan: &RestrictedFan) -> Result<Vec<(u64, u64)>, FanError> {
    if fan.cones.is_empty() {
        return Err(FanError::EmptyFan);
    }
    let mut taus: Vec<Rational64> = fan
        .cones
        .iter()
        .flat_map(|c| [c.cone.lower, c.cone.upper])
        .filter(|t| fan.include_boundary || (*t != Rational64::from_integer(0) && *t != Rational64::from_integer(1)))
        .collect();
    taus.sort();
    taus.dedup();
    Ok(taus.into_iter().map(ray_of).collect())
}

impl RestrictedFan {
    /// The cone whose closed interval contains `l`, preferring one with `l`
    /// in its interior.
    pub fn cone_of(&self, l: (i64, i64)) -> Option<&FanCone> {
        let t = tau_of(l);
        self.cones
            .iter()
            .find(|c| c.cone.lower < t && t < c.cone.upper)
            .or_else(|| self.cones.iter().find(|c| c.cone.lower <= t && t <= c.cone.upper))
    }

    pub fn to_json(&self) -> Value {
        let cones: Vec<Value> = self
            .cones
            .iter()
            .map(|c| {
                json!({
                    "constraints": c.cone.constraints.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                    "rays": c.cone.rays().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                    "witness": [c.witness.0, c.witness.1],
                    "basis_size": c.basis.len(),
                })
            })
            .collect();
        let sk: Vec<Value> = skeleton(self)
            .unwrap_or_default()
            .into_iter()
            .map(|(a, b)| json!([a, b]))
            .collect();
        json!({"cones": cones, "skeleton": sk, "include_boundary": self.include_boundary})
    }
}

/// One element of one cone's basis in the computation of `κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaRow {
    pub cone: usize,
    pub element: WeylElement,
    pub ord: i64,
    pub ord_mark: i64,
    pub difference: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KappaResult {
    pub kappa: (u64, u64),
    pub rows: Vec<KappaRow>,
}

impl KappaResult {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "cone": r.cone,
                    "element": r.element.render(),
                    "ord": r.ord,
                    "ord_mark": r.ord_mark,
                    "difference": r.difference,
                })
            })
            .collect();
        json!({"kappa": [self.kappa.0, self.kappa.1], "rows": rows})
    }
}

/// `κ = (κ1, 0)` with `κ1` the largest gap between the `V_1`-order of a
/// basis element and that of its marked monomial, over all cones.
pub fn kappa(fan: &RestrictedFan) -> KappaResult {
    let mut rows = Vec::new();
    let mut k1 = 0i64;
    for (ci, c) in fan.cones.iter().enumerate() {
        let sig = c.basis.signature();
        let v1 = WeightVector::v(sig, 0);
        let marks = c.basis.marks();
        for (e, m) in c.basis.elements().into_iter().zip(marks) {
            let ord = v1.ord(&e).expect("basis elements are nonzero");
            let ord_mark = m.dot(v1.as_slice());
            let difference = ord - ord_mark;
            k1 = k1.max(difference);
            rows.push(KappaRow {
                cone: ci,
                element: e,
                ord,
                ord_mark,
                difference,
            });
        }
    }
    KappaResult {
        kappa: (k1 as u64, 0),
        rows,
    }
}

#[cfg(test)]
mod tests;
