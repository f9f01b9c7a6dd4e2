//! Depth-first search for L-subgroups inside an interval `[lower, upper]`.
//!
//! Elements are assigned in id order, an element together with its inverse.
//! After each assignment the lower bound is closed under the subgroup axioms
//! and the branch is cut as soon as it leaves the upper bound.

use crate::lattice::Elem;
use crate::lsub::{propagate, LSubset};

pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// The search ran out of propagation steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub steps: u64,
}

struct Search<'a, F> {
    upper: &'a LSubset,
    budget: u64,
    steps: u64,
    order: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[Elem]) -> bool> Search<'_, F> {
    fn charge(&mut self, n: u64) -> Result<(), BudgetExceeded> {
        self.steps += n.max(1);
        if self.steps > self.budget {
            Err(BudgetExceeded { steps: self.steps })
        } else {
            Ok(())
        }
    }

    // Ok(false) stops the whole search.
    fn go(&mut self, depth: usize, lo: &[Elem], hi: &[Elem]) -> Result<bool, BudgetExceeded> {
        let g = &**self.upper.group();
        let l = &**self.upper.lattice();
        let Some(&x) = self.order.get(depth) else {
            return Ok((self.visit)(lo));
        };
        let xi = g.inv(x);
        for v in l.elements() {
            if !l.leq(lo[x], v) || !l.leq(v, hi[x]) {
                continue;
            }
            let mut lo2 = lo.to_vec();
            let mut hi2 = hi.to_vec();
            lo2[x] = v;
            lo2[xi] = v;
            hi2[x] = v;
            hi2[xi] = v;
            let res = propagate(g, l, &mut lo2, vec![x, xi], Some(&hi2));
            let ok = match res {
                Ok(n) => {
                    self.charge(n)?;
                    true
                }
                Err(n) => {
                    self.charge(n)?;
                    false
                }
            };
            if ok && !self.go(depth + 1, &lo2, &hi2)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Calls `visit` on every L-subgroup `θ` with `lower ⊆ θ ⊆ upper`, in a
/// fixed order. `visit` returns `false` to stop early. Returns the number of
/// steps used, or `BudgetExceeded`.
///
/// `upper` must be an L-subgroup and `lower ⊆ upper`.
pub fn for_each_between<F: FnMut(&[Elem]) -> bool>(
    lower: &LSubset,
    upper: &LSubset,
    budget: u64,
    visit: F,
) -> Result<u64, BudgetExceeded> {
    let g = upper.group().clone();
    let l = upper.lattice().clone();
    let order: Vec<usize> = g.ids().filter(|&x| x <= g.inv(x)).collect();
    let mut s = Search {
        upper,
        budget,
        steps: 0,
        order,
        visit,
    };
    let mut lo = lower.values().to_vec();
    let hi = upper.values().to_vec();
    let seeds: Vec<usize> = g.ids().collect();
    let n = match propagate(&g, &l, &mut lo, seeds, Some(&hi)) {
        Ok(n) => n,
        Err(n) => {
            s.charge(n)?;
            return Ok(s.steps);
        }
    };
    s.charge(n)?;
    s.go(0, &lo, &hi)?;
    Ok(s.steps)
}

/// Every L-subgroup of `mu`.
pub fn enumerate(mu: &LSubset, budget: u64) -> Result<Vec<LSubset>, BudgetExceeded> {
    let bottom = LSubset::constant(mu.group().clone(), mu.lattice().clone(), mu.lattice().bottom());
    let mut out = Vec::new();
    for_each_between(&bottom, mu, budget, |v| {
        out.push(mu.with_values(v.to_vec()));
        true
    })?;
    Ok(out)
}

/// Some L-subgroup strictly between `eta` and `mu`, if any.
pub fn intermediate(
    eta: &LSubset,
    mu: &LSubset,
    budget: u64,
) -> Result<Option<LSubset>, BudgetExceeded> {
    let mut found = None;
    for_each_between(eta, mu, budget, |v| {
        if v != eta.values() && v != mu.values() {
            found = Some(mu.with_values(v.to_vec()));
            false
        } else {
            true
        }
    })?;
    Ok(found)
}
