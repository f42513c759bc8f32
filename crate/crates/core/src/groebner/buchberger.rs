use std::time::Instant;

use crate::poly::Coeff;
use crate::scalars::ExactScalar;
use crate::weyl::Mono;

use super::opoly::{GeoBucket, OPoly};
use super::order::{Key, TermOrder};
use super::{Budget, GbError};

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub poly: OPoly,
    pub lm: Mono,
    pub mask: u32,
    pub sugar: u32,
    pub shadow: Option<OPoly>,
}

impl Elem {
    pub fn new(poly: OPoly, sugar: u32, shadow: Option<OPoly>) -> Self {
        let lm = poly.lead().mono;
        Elem {
            mask: lm.support_mask(),
            lm,
            poly,
            sugar,
            shadow,
        }
    }

    #[inline]
    fn divides(&self, m: &Mono, mask: u32) -> bool {
        self.mask & !mask == 0 && self.lm.divides(m)
    }
}

/// One division step: `c * m * basis[idx]` was subtracted.
#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub idx: usize,
    pub mono: Mono,
    pub c: ExactScalar,
}

pub(crate) struct Reducer<'a> {
    pub ord: &'a TermOrder,
    pub basis: &'a [Elem],
    pub active: Option<&'a [bool]>,
}

impl<'a> Reducer<'a> {
    fn find(&self, m: &Mono, skip: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        let mut best: Option<usize> = None;
        for (i, e) in self.basis.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            if let Some(a) = self.active {
                if !a[i] {
                    continue;
                }
            }
            if e.divides(m, mask) {
                match best {
                    Some(b) if self.basis[b].poly.len() <= e.poly.len() => {}
                    _ => best = Some(i),
                }
            }
        }
        best
    }

    /// Reduce `p`; with `full`, also the non-leading terms. Returns the
    /// remainder, and updates `sugar` and `trace` along the way.
    pub fn reduce(
        &self,
        p: OPoly,
        full: bool,
        skip: Option<usize>,
        sugar: &mut u32,
        mut trace: Option<&mut Vec<Step>>,
        deadline: Option<Instant>,
    ) -> Result<OPoly, GbError> {
        let mut rem: Vec<super::opoly::Term> = Vec::new();
        let mut bucket = GeoBucket::from_poly(p);
        let mut steps = 0usize;
        while let Some(lt) = bucket.pop_lead() {
            steps += 1;
            if steps % 256 == 0 {
                if let Some(d) = deadline {
                    if Instant::now() > d {
                        return Err(GbError::BudgetExceeded("time limit reached during reduction".into()));
                    }
                }
            }
            match self.find(&lt.mono, skip) {
                Some(i) => {
                    let g = &self.basis[i];
                    let q = lt.mono.div(&g.lm);
                    let lc = &g.poly.lead().c;
                    let c = if lc.is_one() {
                        lt.c.neg()
                    } else {
                        lt.c.try_div(lc).expect("nonzero leading coefficient").neg()
                    };
                    let mut prod = g.poly.mul_left(self.ord, &q, &c);
                    debug_assert!(prod.lead().key == lt.key);
                    prod.terms.remove(0);
                    bucket.add(prod.terms);
                    *sugar = (*sugar).max(q.degree() + g.sugar);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(Step {
                            idx: i,
                            mono: q,
                            c: c.neg(),
                        });
                    }
                }
                None => {
                    rem.push(lt);
                    if !full {
                        break;
                    }
                }
            }
        }
        rem.extend(bucket.into_poly().terms);
        Ok(OPoly { terms: rem })
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    /// `None` for an input generator waiting to be inserted.
    j: Option<usize>,
    lcm: Mono,
    key: Key,
    sugar: u32,
}

fn pair_lt(a: &Pair, b: &Pair) -> bool {
    (a.sugar, a.key, a.i, a.j) < (b.sugar, b.key, b.i, b.j)
}

/// Output of a completion: reduced, monic elements sorted by leading term.
pub(crate) struct Completion {
    pub elems: Vec<Elem>,
}

fn commuting_pair(ord: &TermOrder, f: &Elem, g: &Elem) -> bool {
    let sig = ord.signature();
    let mut used = vec![false; sig.nvars()];
    for e in [f, g] {
        for t in &e.poly.terms {
            for (i, u) in used.iter_mut().enumerate() {
                if t.mono.get(i) > 0 {
                    *u = true;
                }
            }
        }
    }
    sig.is_commutative_on(&used)
}

pub(crate) fn complete(
    inputs: Vec<(OPoly, Option<OPoly>)>,
    ord: &TermOrder,
    budget: &Budget,
) -> Result<Completion, GbError> {
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let tracked = inputs.iter().any(|(_, s)| s.is_some());
    let mut inputs: Vec<(OPoly, Option<OPoly>)> = inputs
        .into_iter()
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, s)| {
            let s = if tracked { Some(s.unwrap_or_else(OPoly::zero)) } else { None };
            (p, s)
        })
        .collect();
    inputs.sort_by(|a, b| a.0.canonical_cmp(&b.0));

    let mut basis: Vec<Elem> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = inputs
        .iter()
        .enumerate()
        .map(|(i, (p, _))| Pair {
            i,
            j: None,
            lcm: p.lead().mono,
            key: p.lead().key,
            sugar: p.degree(),
        })
        .collect();
    let mut processed = 0usize;

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            if pair_lt(&pairs[k], &pairs[best]) {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        processed += 1;
        if processed > budget.max_pairs {
            return Err(GbError::BudgetExceeded(format!(
                "more than {} critical pairs",
                budget.max_pairs
            )));
        }
        if let Some(d) = deadline {
            if Instant::now() > d {
                return Err(GbError::BudgetExceeded("time limit reached".into()));
            }
        }

        let one = ExactScalar::int(1);
        let minus = ExactScalar::int(-1);
        let (p, mut sugar) = match pair.j {
            None => (inputs[pair.i].0.clone(), pair.sugar),
            Some(j) => {
                let (f, g) = (&basis[pair.i], &basis[j]);
                let mf = pair.lcm.div(&f.lm);
                let mg = pair.lcm.div(&g.lm);
                let sp = f.poly.mul_left(ord, &mf, &one).add_scaled(&g.poly.mul_left(ord, &mg, &one), &minus);
                (sp, pair.sugar)
            }
        };
        let red = Reducer {
            ord,
            basis: &basis,
            active: Some(&active),
        };
        let mut steps = Vec::new();
        let r = red.reduce(p, false, None, &mut sugar, tracked.then_some(&mut steps), deadline)?;
        if r.is_zero() {
            continue;
        }
        // Cofactors are only rebuilt for remainders that survive.
        let shadow = if tracked {
            let base = match pair.j {
                None => inputs[pair.i].1.clone().unwrap_or_else(OPoly::zero),
                Some(j) => {
                    let (f, g) = (&basis[pair.i], &basis[j]);
                    let (a, b) = (f.shadow.as_ref().unwrap(), g.shadow.as_ref().unwrap());
                    a.mul_left(ord, &pair.lcm.div(&f.lm), &one)
                        .add_scaled(&b.mul_left(ord, &pair.lcm.div(&g.lm), &one), &minus)
                }
            };
            Some(replay_shadow(ord, &basis, base, &steps))
        } else {
            None
        };
        let inv = r.lead().c.inv().expect("nonzero");
        let r = r.scale(&inv);
        let shadow = shadow.map(|s| s.scale(&inv));
        let elem = Elem::new(r, sugar, shadow);
        let unit = elem.lm.is_one();
        basis.push(elem);
        active.push(true);
        if basis.len() > budget.max_basis {
            return Err(GbError::BudgetExceeded(format!(
                "basis grew beyond {} elements",
                budget.max_basis
            )));
        }
        let hn = basis.len() - 1;
        if unit {
            for (k, a) in active.iter_mut().enumerate() {
                *a = k == hn;
            }
            pairs.clear();
            break;
        }
        update(ord, &basis, &mut active, &mut pairs, hn);
    }

    let mut idx: Vec<usize> = (0..basis.len()).filter(|&i| active[i]).collect();
    // Minimality.
    idx.retain(|&i| {
        !(0..basis.len()).any(|k| k != i && active[k] && basis[k].lm.divides(&basis[i].lm) && basis[k].lm != basis[i].lm)
    });
    let mut minimal: Vec<Elem> = idx.into_iter().map(|i| basis[i].clone()).collect();
    minimal.sort_by(|a, b| a.poly.lead().key.cmp(&b.poly.lead().key));
    minimal.dedup_by(|a, b| a.lm == b.lm);

    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let red = Reducer {
            ord,
            basis: &minimal,
            active: None,
        };
        let e = &minimal[k];
        let lead = OPoly {
            terms: vec![e.poly.lead().clone()],
        };
        let tail = OPoly {
            terms: e.poly.terms[1..].to_vec(),
        };
        let mut sugar = e.sugar;
        let mut steps = Vec::new();
        let rt = red.reduce(tail, true, Some(k), &mut sugar, tracked.then_some(&mut steps), deadline)?;
        let shadow = e.shadow.clone().map(|s| replay_shadow(ord, &minimal, s, &steps));
        let poly = lead.add(&rt);
        reduced.push(Elem::new(poly, e.sugar, shadow));
    }
    Ok(Completion { elems: reduced })
}

/// `base - Σ c·m·shadow(idx)` over the recorded division steps.
fn replay_shadow(ord: &TermOrder, basis: &[Elem], base: OPoly, steps: &[Step]) -> OPoly {
    let mut acc = GeoBucket::from_poly(base);
    for st in steps {
        let sh = basis[st.idx].shadow.as_ref().expect("tracked basis");
        acc.add(sh.mul_left(ord, &st.mono, &st.c.neg()).terms);
    }
    acc.into_poly()
}

fn update(ord: &TermOrder, basis: &[Elem], active: &mut [bool], pairs: &mut Vec<Pair>, hn: usize) {
    let h = &basis[hn];
    struct Cand {
        pair: Pair,
        prod: bool,
        keep: bool,
    }
    let mut cands: Vec<Cand> = Vec::new();
    for i in 0..hn {
        if !active[i] {
            continue;
        }
        let g = &basis[i];
        let lcm = g.lm.lcm(&h.lm);
        let sugar = (g.sugar + lcm.degree() - g.lm.degree()).max(h.sugar + lcm.degree() - h.lm.degree());
        let prod = g.lm.is_coprime(&h.lm) && commuting_pair(ord, g, h);
        cands.push(Cand {
            pair: Pair {
                i,
                j: Some(hn),
                lcm,
                key: ord.key(&lcm),
                sugar,
            },
            prod,
            keep: true,
        });
    }
    // Criterion M: a pair whose lcm is properly divisible by another's.
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b
                && cands[b].pair.lcm.divides(&cands[a].pair.lcm)
                && cands[b].pair.lcm != cands[a].pair.lcm
            {
                cands[a].keep = false;
                break;
            }
        }
    }
    // Criterion F: one pair per lcm; the product criterion kills the group.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for a in 0..cands.len() {
        if !cands[a].keep {
            continue;
        }
        match groups.iter_mut().find(|g| cands[g[0]].pair.lcm == cands[a].pair.lcm) {
            Some(g) => g.push(a),
            None => groups.push(vec![a]),
        }
    }
    let mut fresh: Vec<Pair> = Vec::new();
    for g in groups {
        if g.iter().any(|&a| cands[a].prod) {
            continue;
        }
        fresh.push(cands[g[0]].pair.clone());
    }
    // Criterion B on existing pairs.
    pairs.retain(|p| {
        let Some(j) = p.j else { return true };
        if !h.lm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].lm.lcm(&h.lm);
        let lj = basis[j].lm.lcm(&h.lm);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(fresh);
    for i in 0..hn {
        if active[i] && h.lm.divides(&basis[i].lm) {
            active[i] = false;
        }
    }
}
