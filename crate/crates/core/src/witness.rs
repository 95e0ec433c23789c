//! Integral dependence certified by powers: `(x^β)^k ∈ I^k`.
//!
//! For a monomial this is the equation `u^k - b = 0` with `b ∈ I^k`, so a
//! multiset of `k` generators whose exponent sum divides `k·β` proves `x^β`
//! integral over `I`. The search never consults the Newton polyhedron, which
//! makes it an independent check on [`crate::closure::hull_membership`].

use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerWitness {
    pub k: u64,
    /// Generators of the (materialized) ideal the indices refer to.
    pub generators: Vec<ExponentVector>,
    /// Sorted multiset of `k` generator indices.
    pub factors: Vec<usize>,
}

impl PowerWitness {
    /// Sum of the chosen generators, i.e. the element of `I^k` dividing `(x^β)^k`.
    pub fn product(&self) -> Option<ExponentVector> {
        let dim = self.generators.first()?.dim();
        self.factors.iter().try_fold(ExponentVector::zero(dim), |acc, &i| acc.checked_add(self.generators.get(i)?).ok())
    }

    pub fn validate(&self, beta: &ExponentVector) -> bool {
        if self.k == 0 || self.factors.len() as u64 != self.k {
            return false;
        }
        match (self.product(), beta.checked_scale(self.k)) {
            (Some(p), Ok(target)) => p.dim() == target.dim() && p.divides(&target),
            _ => false,
        }
    }
}

/// Least `k <= k_max` with `(x^β)^k ∈ I^k`, with its generator multiset.
///
/// `None` only means no witness exists up to `k_max`; it does not prove
/// `x^β` is outside the closure.
pub fn power_witness(ideal: &MonomialIdeal, beta: &ExponentVector, k_max: u64) -> Result<Option<PowerWitness>> {
    check_dim(ideal.dim(), beta.dim())?;
    let ideal = ideal.materialize();
    let gens = ideal.generators();
    if gens.is_empty() {
        return Ok(None);
    }
    for k in 1..=k_max {
        let budget = beta.checked_scale(k)?;
        if let Some(factors) = search_level(gens, &budget, k) {
            return Ok(Some(PowerWitness { k, generators: gens.to_vec(), factors }));
        }
    }
    Ok(None)
}

/// Depth-first search over counts `c_i` with `Σ c_i = slots` and
/// `Σ c_i g_i <= budget`, pruning on per-coordinate lower bounds.
fn search_level(gens: &[ExponentVector], budget: &ExponentVector, slots: u64) -> Option<Vec<usize>> {
    let usable: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].divides(budget)).collect();
    if usable.is_empty() {
        return None;
    }
    let d = budget.dim();
    // suffix_min[p][j]: smallest j-th coordinate among usable[p..].
    let mut suffix_min = vec![vec![u64::MAX; d]; usable.len() + 1];
    for p in (0..usable.len()).rev() {
        let (head, tail) = suffix_min.split_at_mut(p + 1);
        for (j, slot) in head[p].iter_mut().enumerate() {
            *slot = tail[0][j].min(gens[usable[p]].get(j));
        }
    }
    let mut counts = vec![0u64; usable.len()];
    let mut left = budget.coords().to_vec();
    let ctx = Search { gens, usable: &usable, suffix_min: &suffix_min };
    if ctx.dfs(0, slots, &mut left, &mut counts) {
        let mut factors = Vec::with_capacity(slots as usize);
        for (p, &c) in counts.iter().enumerate() {
            factors.extend(std::iter::repeat(usable[p]).take(c as usize));
        }
        factors.sort_unstable();
        Some(factors)
    } else {
        None
    }
}

struct Search<'a> {
    gens: &'a [ExponentVector],
    usable: &'a [usize],
    suffix_min: &'a [Vec<u64>],
}

impl Search<'_> {
    fn dfs(&self, p: usize, slots: u64, left: &mut [u64], counts: &mut [u64]) -> bool {
        if slots == 0 {
            return true;
        }
        if p == self.usable.len() {
            return false;
        }
        let bound = &self.suffix_min[p];
        if left.iter().zip(bound).any(|(&l, &m)| slots.saturating_mul(m) > l) {
            return false;
        }
        let g = self.gens[self.usable[p]].coords();
        let mut most = slots;
        for (&l, &c) in left.iter().zip(g) {
            if let Some(q) = l.checked_div(c) {
                most = most.min(q);
            }
        }
        if p + 1 == self.usable.len() {
            if most < slots {
                return false;
            }
            counts[p] = slots;
            return true;
        }
        for c in (0..=most).rev() {
            for (l, &e) in left.iter_mut().zip(g) {
                *l -= c * e;
            }
            counts[p] = c;
            let found = self.dfs(p + 1, slots - c, left, counts);
            for (l, &e) in left.iter_mut().zip(g) {
                *l += c * e;
            }
            if found {
                return true;
            }
        }
        counts[p] = 0;
        false
    }
}
