//! Row-by-row checks of the containment lemmas behind the linear bound,
//! run on concrete monomial instances.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closure::{hull_membership, integral_closure, is_integrally_closed, HullCertificate};
use crate::error::{check_dim, Error, Result};
use crate::exponent::ExponentVector;
use crate::growth::{f_max_against, growth_report, modulus_power, Growth};
use crate::ideal::MonomialIdeal;

fn check_range(n_from: u64, n_to: u64) -> Result<()> {
    if n_from == 0 || n_from > n_to {
        return Err(Error::Precondition(format!("invalid range {n_from}..{n_to}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionRow {
    pub n: u64,
    /// `f(n)` of `J ∩ K`.
    pub f: Growth,
    /// `⌊n/c0⌋ - c1`, clamped at zero: the bound the intersection argument yields.
    pub lemma_bound: u64,
    /// `⌊n/c⌋` for the derived constant `c = c0·(c1 + 1)`.
    pub derived_bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub intersection: MonomialIdeal,
    pub c_first: u64,
    pub c_second: u64,
    /// Measured Artin–Rees offset for `m^p ∩ (J + K)`.
    pub artin_rees_offset: u64,
    pub derived_c: u64,
    /// Smallest constant that works for `J ∩ K` on the tested range.
    pub empirical_c: u64,
    pub rows: Vec<IntersectionRow>,
}

impl IntersectionReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Smallest `c1 <= max level` with `m^p ∩ L ⊆ m^{p-c1} (m^{c1} ∩ L)` for every
/// level `p >= c1` in `levels`. The reverse containment always holds.
pub fn artin_rees_offset(sum: &MonomialIdeal, levels: &[u64]) -> Result<u64> {
    let dim = sum.dim();
    let top = levels.iter().copied().max().unwrap_or(0);
    let mut cache: BTreeMap<u64, MonomialIdeal> = BTreeMap::new();
    let mut capped = |p: u64| -> Result<MonomialIdeal> {
        if let Some(v) = cache.get(&p) {
            return Ok(v.clone());
        }
        let v = MonomialIdeal::m_power(dim, p, None)?.intersection(sum)?;
        cache.insert(p, v.clone());
        Ok(v)
    };
    'offsets: for c1 in 0..=top {
        let base = capped(c1)?;
        for &p in levels.iter().filter(|&&p| p >= c1) {
            let shifted = MonomialIdeal::m_power(dim, p - c1, None)?.product(&base)?;
            if !shifted.contains_ideal(&capped(p)?)? {
                continue 'offsets;
            }
        }
        return Ok(c1);
    }
    Ok(top)
}

/// Checks the bound for `J ∩ K` obtained from the bounds for `J` and `K`
/// plus an Artin–Rees offset, all measured on `n_from..=n_to` with modulus `m`.
pub fn verify_intersection_lemma(
    first: &MonomialIdeal,
    second: &MonomialIdeal,
    n_from: u64,
    n_to: u64,
) -> Result<IntersectionReport> {
    check_dim(first.dim(), second.dim())?;
    check_range(n_from, n_to)?;
    for (name, ideal) in [("J", first), ("K", second)] {
        if !is_integrally_closed(ideal) {
            return Err(Error::NotIntegrallyClosed(format!("{name} = {ideal}")));
        }
    }
    let m = MonomialIdeal::maximal(first.dim());
    let c_first = growth_report(first, &m, n_from, n_to, None)?.empirical_c;
    let c_second = if first == second { c_first } else { growth_report(second, &m, n_from, n_to, None)?.empirical_c };
    let c0 = c_first.max(c_second);

    let intersection = first.intersection(second)?;
    let sum = first.sum(second)?;
    let levels: Vec<u64> = (n_from..=n_to).map(|n| n / c0).filter(|&p| p > 0).collect();
    let c1 = artin_rees_offset(&sum, &levels)?;
    let derived_c = c0 * (c1 + 1);

    let report = growth_report(&intersection, &m, n_from, n_to, None)?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            let lemma_bound = (r.n / c0).saturating_sub(c1);
            let derived_bound = r.n / derived_c;
            IntersectionRow {
                n: r.n,
                f: r.f,
                lemma_bound,
                derived_bound,
                holds: r.f.reaches(lemma_bound) && r.f.reaches(derived_bound),
            }
        })
        .collect();
    Ok(IntersectionReport {
        intersection,
        c_first,
        c_second,
        artin_rees_offset: c1,
        derived_c,
        empirical_c: report.empirical_c,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalSwapRow {
    pub n: u64,
    /// Growth against the radical `K`.
    pub f: Growth,
    /// Growth against `J`.
    pub g: Growth,
    /// `closure(I + J^n) ⊆ closure(I + K^n)` and `g(n) >= ⌊f(n)/k⌋`.
    pub forward: bool,
    /// `closure(I + K^n) ⊆ closure(I + J^{⌊n/k⌋})` and `f(n) >= g(⌊n/k⌋)`.
    pub backward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalSwapReport {
    pub radical: MonomialIdeal,
    /// Least `k` with `K^k ⊆ J`.
    pub k: u64,
    /// Empirical linear constants of `f` and `g` on the range.
    pub rate_radical: u64,
    pub rate_modulus: u64,
    pub rows: Vec<RadicalSwapRow>,
}

impl RadicalSwapReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.forward && r.backward)
    }
}

/// Least `k >= 1` with `radical(J)^k ⊆ J`.
pub fn radical_exponent(modulus: &MonomialIdeal) -> Result<u64> {
    let radical = modulus.radical();
    // Each generator of J divides the k-th power of its support once
    // k >= its largest exponent; k = d·(max degree) is a safe cap.
    let cap = (modulus.dim() as u64).max(1) * modulus.max_generator_degree().max(1);
    for k in 1..=cap {
        if modulus.contains_ideal(&modulus_power(&radical, k)?)? {
            return Ok(k);
        }
    }
    Err(Error::Precondition(format!("no power of the radical of {modulus} found inside it")))
}

/// Checks both containment chains relating growth against `J` and against
/// `K = radical(J)`, row by row.
pub fn verify_radical_swap(
    ideal: &MonomialIdeal,
    modulus: &MonomialIdeal,
    n_from: u64,
    n_to: u64,
) -> Result<RadicalSwapReport> {
    check_dim(ideal.dim(), modulus.dim())?;
    check_range(n_from, n_to)?;
    if modulus.is_zero() || modulus.is_unit() {
        return Err(Error::InvalidModulus("J must be proper and nonzero"));
    }
    let radical = modulus.radical();
    let k = radical_exponent(modulus)?;
    let closed = integral_closure(ideal);

    let mut closures: BTreeMap<(bool, u64), MonomialIdeal> = BTreeMap::new();
    let mut closure_of = |use_radical: bool, n: u64| -> Result<MonomialIdeal> {
        if let Some(c) = closures.get(&(use_radical, n)) {
            return Ok(c.clone());
        }
        let base = if use_radical { &radical } else { modulus };
        let c = integral_closure(&ideal.sum(&modulus_power(base, n)?)?);
        closures.insert((use_radical, n), c.clone());
        Ok(c)
    };
    let mut g_values: BTreeMap<u64, Growth> = BTreeMap::new();
    let mut g_at = |n: u64| -> Result<Growth> {
        if let Some(v) = g_values.get(&n) {
            return Ok(*v);
        }
        let v = f_max_against(ideal, &closed, modulus, n)?.value;
        g_values.insert(n, v);
        Ok(v)
    };

    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let f = f_max_against(ideal, &closed, &radical, n)?.value;
        let g = g_at(n)?;

        let mut forward = closure_of(true, n)?.contains_ideal(&closure_of(false, n)?)?;
        if let Growth::Finite(fv) = f {
            let q = fv / k;
            forward &= g.reaches(q);
            forward &= modulus_power(modulus, q)?.contains_ideal(&modulus_power(&radical, k * q)?)?;
        }

        let reduced = n / k;
        let backward = if reduced == 0 {
            true
        } else {
            closure_of(false, reduced)?.contains_ideal(&closure_of(true, n)?)? && f >= g_at(reduced)?
        };
        rows.push(RadicalSwapRow { n, f, g, forward, backward });
    }
    let rate_radical = crate::growth::empirical_constant(rows.iter().map(|r| (r.n, r.f)));
    let rate_modulus = crate::growth::empirical_constant(rows.iter().map(|r| (r.n, r.g)));
    Ok(RadicalSwapReport { radical, k, rate_radical, rate_modulus, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub n: u64,
    pub k: u64,
    pub point: ExponentVector,
    /// `x y^{n/2} ∈ closure((x^2) + m^n)`.
    pub integral: bool,
    /// `x y^{n/2} ∈ (x^2, x y^{n-k-1}, y^{n-k})`.
    pub in_shifted: bool,
    pub certificate: HullCertificate,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        self.integral && !self.in_shifted
    }
}

/// In two variables, `x y^{n/2}` is integral over `(x^2) + m^n` yet lies
/// outside `(x^2, x y^{n-k-1}, y^{n-k})`, so no fixed shift `n - k` bounds
/// the closure of `(x^2) + m^n`.
pub fn counterexample_check(n: u64, k: u64) -> Result<CounterexampleReport> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Precondition(format!("n must be even and at least 4, got {n}")));
    }
    if k + 1 >= n || n - k - 1 <= n / 2 {
        return Err(Error::Precondition(format!("need n - k - 1 > n/2, got n={n}, k={k}")));
    }
    let point = ExponentVector::from([1, n / 2]);
    let base =
        MonomialIdeal::minimalize(2, vec![ExponentVector::from([2, 0])])?.sum(&MonomialIdeal::m_power(2, n, None)?)?;
    let certificate = hull_membership(&base, &point)?;
    let shifted = MonomialIdeal::minimalize(
        2,
        vec![ExponentVector::from([2, 0]), ExponentVector::from([1, n - k - 1]), ExponentVector::from([0, n - k])],
    )?;
    Ok(CounterexampleReport {
        n,
        k,
        integral: certificate.is_feasible(),
        in_shifted: shifted.contains_monomial(&point)?,
        point,
        certificate,
    })
}

/// Three admissible shifts for even `n >= 4`: the smallest, the largest
/// (`n/2 - 2`) and one in between, deduplicated.
pub fn sample_shifts(n: u64) -> Vec<u64> {
    if n < 4 || n % 2 != 0 {
        return Vec::new();
    }
    let top = n / 2 - 2;
    let mut ks = vec![0, top / 2, top];
    ks.dedup();
    ks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub ideal: MonomialIdeal,
    /// `(n, n - f(n))`; `None` where `f(n)` is infinite.
    pub gaps: Vec<(u64, Option<i64>)>,
    pub non_increasing: bool,
    pub bounded_by_last: bool,
}

impl GapReport {
    pub fn holds(&self) -> bool {
        self.non_increasing || self.bounded_by_last
    }
}

/// For a radical `I`, the additive gap `n - f(n)` against `m` should not grow.
///
/// Passes if the finite gaps never increase, or if none exceeds the gap at
/// `n_to` (infinite at `n_to` counts as bounded, since `f` is nondecreasing).
pub fn rees_gap_check(ideal: &MonomialIdeal, n_from: u64, n_to: u64) -> Result<GapReport> {
    if ideal.radical() != ideal.materialize() {
        return Err(Error::Precondition(format!("{ideal} is not radical")));
    }
    let m = MonomialIdeal::maximal(ideal.dim());
    let report = growth_report(ideal, &m, n_from, n_to, None)?;
    let gaps: Vec<(u64, Option<i64>)> =
        report.rows.iter().map(|r| (r.n, r.f.finite().map(|f| r.n as i64 - f as i64))).collect();
    let finite: Vec<i64> = gaps.iter().filter_map(|(_, g)| *g).collect();
    let non_increasing = finite.windows(2).all(|w| w[1] <= w[0]);
    let bounded_by_last = match gaps.last().and_then(|(_, g)| *g) {
        Some(last) => finite.iter().all(|&g| g <= last),
        None => true,
    };
    Ok(GapReport { ideal: ideal.clone(), gaps, non_increasing, bounded_by_last })
}
