//! Cross-check of the LP closure test against the power-witness search on
//! seeded random ideals.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::hull_membership;
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;
use crate::sample::{random_ideal, rng};
use crate::witness::power_witness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub seed: u64,
    pub cases: usize,
    pub k_max: u64,
    /// Every monomial of total degree at most this is tested.
    pub max_degree: u64,
    pub max_dim: usize,
    pub max_gens: usize,
    pub max_exp: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { seed: 0, cases: 200, k_max: 60, max_degree: 12, max_dim: 3, max_gens: 4, max_exp: 5 }
    }
}

/// One monomial on which the two deciders did not both succeed or both fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: usize,
    pub ideal: String,
    pub point: ExponentVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub cases: usize,
    pub points: u64,
    pub both_feasible: u64,
    pub both_infeasible: u64,
    /// Hull feasible, no power witness up to `k_max`.
    pub unresolved: Vec<Discrepancy>,
    /// Power witness found, hull infeasible. Must be empty.
    pub contradictions: Vec<Discrepancy>,
    /// Certificates failing exact re-validation. Must be empty.
    pub invalid_certificates: Vec<Discrepancy>,
    /// Largest witness exponent `k` seen.
    pub max_k: u64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.contradictions.is_empty() && self.invalid_certificates.is_empty()
    }

    pub fn agrees_everywhere(&self) -> bool {
        self.passed() && self.unresolved.is_empty()
    }
}

/// All `β >= 0` in `dim` variables with `|β| <= max_degree`.
pub fn degree_box(dim: usize, max_degree: u64) -> Vec<ExponentVector> {
    fn rec(dim: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
        if cur.len() == dim {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, max_degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// The ideals a given configuration tests, in case order.
pub fn sample_cases(config: &OracleConfig) -> Vec<MonomialIdeal> {
    let mut r = rng(config.seed);
    (0..config.cases)
        .map(|_| {
            let dim = r.gen_range(1..=config.max_dim.max(1));
            random_ideal(&mut r, dim, config.max_gens, config.max_exp)
        })
        .collect()
}

pub fn run_oracle_check(config: &OracleConfig) -> OracleReport {
    let ideals = sample_cases(config);
    let partials: Vec<OracleReport> =
        ideals.par_iter().enumerate().map(|(case, ideal)| check_case(case, ideal, config)).collect();
    let mut total = OracleReport { cases: ideals.len(), ..OracleReport::default() };
    for p in partials {
        total.points += p.points;
        total.both_feasible += p.both_feasible;
        total.both_infeasible += p.both_infeasible;
        total.unresolved.extend(p.unresolved);
        total.contradictions.extend(p.contradictions);
        total.invalid_certificates.extend(p.invalid_certificates);
        total.max_k = total.max_k.max(p.max_k);
    }
    total
}

fn check_case(case: usize, ideal: &MonomialIdeal, config: &OracleConfig) -> OracleReport {
    let mut rep = OracleReport::default();
    let discrepancy = |point: &ExponentVector| Discrepancy { case, ideal: ideal.to_string(), point: point.clone() };
    for beta in degree_box(ideal.dim(), config.max_degree) {
        rep.points += 1;
        let cert = hull_membership(ideal, &beta).expect("sampled ideals are nonzero");
        let witness = power_witness(ideal, &beta, config.k_max).expect("dimensions agree");
        let mut valid = cert.validate();
        if let Some(w) = &witness {
            valid &= w.validate(&beta);
            rep.max_k = rep.max_k.max(w.k);
        }
        if !valid {
            rep.invalid_certificates.push(discrepancy(&beta));
        }
        match (cert.is_feasible(), witness.is_some()) {
            (true, true) => rep.both_feasible += 1,
            (false, false) => rep.both_infeasible += 1,
            (true, false) => rep.unresolved.push(discrepancy(&beta)),
            (false, true) => rep.contradictions.push(discrepancy(&beta)),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_box_size() {
        // C(12 + 3, 3) monomials of degree <= 12 in three variables.
        assert_eq!(degree_box(3, 12).len(), 455);
        assert_eq!(degree_box(1, 12).len(), 13);
    }

    #[test]
    fn small_run_agrees() {
        let config = OracleConfig { cases: 8, k_max: 30, max_degree: 6, ..OracleConfig::default() };
        let rep = run_oracle_check(&config);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.cases, 8);
        assert_eq!(rep.points, rep.both_feasible + rep.both_infeasible + rep.unresolved.len() as u64);
    }
}
