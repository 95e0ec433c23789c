//! The growth function `f(n)`: the largest `k` with
//! `closure(I + J^n) ⊆ closure(I) + J^k`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::closure::integral_closure;
use crate::error::{check_dim, Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;

/// A value of `f(n)`; `Infinite` when `closure(I + J^n) ⊆ closure(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Growth {
    Finite(u64),
    Infinite,
}

impl Growth {
    pub fn finite(self) -> Option<u64> {
        match self {
            Growth::Finite(v) => Some(v),
            Growth::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Growth::Infinite)
    }

    /// `self >= k`.
    pub fn reaches(self, k: u64) -> bool {
        self >= Growth::Finite(k)
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Finite(v) => write!(f, "{v}"),
            Growth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Growth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Growth::Finite(v) => s.serialize_u64(*v),
            Growth::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `f(n)` together with a generator of `closure(I + J^n)` that attains it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FMax {
    pub value: Growth,
    /// First generator (in canonical order) outside `closure(I)` of least `J`-order.
    pub witness: Option<ExponentVector>,
}

fn check_modulus(modulus: &MonomialIdeal) -> Result<()> {
    if modulus.is_zero() {
        return Err(Error::InvalidModulus("the zero ideal"));
    }
    if modulus.is_unit() {
        return Err(Error::InvalidModulus("the unit ideal"));
    }
    Ok(())
}

/// `J^n`, kept symbolic when `J` is a single floor `(x_S)^a` (then `J^n = (x_S)^{an}`).
pub fn modulus_power(modulus: &MonomialIdeal, n: u64) -> Result<MonomialIdeal> {
    if let ([], [floor]) = (modulus.generators(), modulus.floors()) {
        let degree = floor.degree().checked_mul(n).ok_or(Error::ExponentOverflow)?;
        return MonomialIdeal::m_power(modulus.dim(), degree, Some(floor.vars()));
    }
    modulus.power(n)
}

/// Largest `k` with `x^g ∈ J^k`, for a proper nonzero `J`.
pub fn order_in(modulus: &MonomialIdeal, g: &ExponentVector) -> Result<u64> {
    check_dim(modulus.dim(), g.dim())?;
    check_modulus(modulus)?;
    if let ([], [floor]) = (modulus.generators(), modulus.floors()) {
        return Ok(g.partial_degree(floor.vars()) / floor.degree());
    }
    // Every generator of J has degree >= 1, so x^g ∉ J^k once k > deg g.
    let (mut lo, mut hi) = (0u64, g.degree() + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if modulus_power(modulus, mid)?.contains_unchecked(g) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn validate_fmax_args(ideal: &MonomialIdeal, modulus: &MonomialIdeal, n: u64) -> Result<()> {
    check_dim(ideal.dim(), modulus.dim())?;
    check_modulus(modulus)?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Ok(())
}

/// `f(n)` for `I` and the modulus `J`.
pub fn f_max(ideal: &MonomialIdeal, modulus: &MonomialIdeal, n: u64) -> Result<FMax> {
    validate_fmax_args(ideal, modulus, n)?;
    f_max_against(ideal, &integral_closure(ideal), modulus, n)
}

/// `f(n)` with `closure(I)` supplied by the caller.
pub(crate) fn f_max_against(
    ideal: &MonomialIdeal,
    closed: &MonomialIdeal,
    modulus: &MonomialIdeal,
    n: u64,
) -> Result<FMax> {
    let big = integral_closure(&ideal.sum(&modulus_power(modulus, n)?)?);
    let mut best: Option<(u64, &ExponentVector)> = None;
    for g in big.generators() {
        if closed.contains_unchecked(g) {
            continue;
        }
        let k = order_in(modulus, g)?;
        if best.map_or(true, |(b, _)| k < b) {
            best = Some((k, g));
        }
    }
    Ok(match best {
        Some((k, g)) => FMax { value: Growth::Finite(k), witness: Some(g.clone()) },
        None => FMax { value: Growth::Infinite, witness: None },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: u64,
    pub f: Growth,
    /// `⌊n/c⌋` for the claimed constant, if one was given.
    pub floor_n_over_c: Option<u64>,
    pub verified: Option<bool>,
    pub witness: Option<ExponentVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub ideal: MonomialIdeal,
    pub modulus: MonomialIdeal,
    pub closure: MonomialIdeal,
    pub claimed_c: Option<u64>,
    pub rows: Vec<GrowthRow>,
    /// Smallest `c` with `⌊n/c⌋ <= f(n)` on the rows above; says nothing about other `n`.
    pub empirical_c: u64,
}

impl GrowthReport {
    /// True when no constant was claimed or every row meets it.
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &GrowthRow> {
        self.rows.iter().filter(|r| r.verified == Some(false))
    }

    pub fn value_at(&self, n: u64) -> Option<Growth> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.f)
    }
}

/// Smallest `c >= 1` with `⌊n/c⌋ <= f(n)` for every `(n, f)`.
///
/// `⌊n/c⌋ <= f` iff `c > n/(f+1)` iff `c >= ⌊n/(f+1)⌋ + 1`.
pub fn empirical_constant(rows: impl IntoIterator<Item = (u64, Growth)>) -> u64 {
    rows.into_iter().filter_map(|(n, f)| f.finite().map(|f| n / (f + 1) + 1)).max().unwrap_or(1).max(1)
}

/// Sweeps `n` over `n_from..=n_to`. Rows are computed in parallel on the
/// current rayon pool and returned in `n` order.
pub fn growth_report(
    ideal: &MonomialIdeal,
    modulus: &MonomialIdeal,
    n_from: u64,
    n_to: u64,
    claimed_c: Option<u64>,
) -> Result<GrowthReport> {
    if n_from == 0 || n_from > n_to {
        return Err(Error::Precondition(format!("invalid range {n_from}..{n_to}")));
    }
    if claimed_c == Some(0) {
        return Err(Error::Precondition("claimed constant must be positive".into()));
    }
    validate_fmax_args(ideal, modulus, n_from)?;
    let closed = integral_closure(ideal);
    let rows = (n_from..=n_to)
        .into_par_iter()
        .map(|n| {
            let fm = f_max_against(ideal, &closed, modulus, n)?;
            let floor_n_over_c = claimed_c.map(|c| n / c);
            Ok(GrowthRow {
                n,
                f: fm.value,
                floor_n_over_c,
                verified: floor_n_over_c.map(|b| fm.value.reaches(b)),
                witness: fm.witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let empirical_c = empirical_constant(rows.iter().map(|r| (r.n, r.f)));
    Ok(GrowthReport { ideal: ideal.clone(), modulus: modulus.clone(), closure: closed, claimed_c, rows, empirical_c })
}

/// The explicit constant known for `I`: `a1···as` when `I = (x_{j1}^{a1}, ..., x_{js}^{as})`
/// (which is `t` for a principal `(x_j^t)`), otherwise `None`.
pub fn paper_constant(ideal: &MonomialIdeal) -> Option<u64> {
    if ideal.has_floors() || ideal.generators().is_empty() {
        return None;
    }
    let mut c: u64 = 1;
    for g in ideal.generators() {
        let mut nonzero = g.coords().iter().filter(|&&e| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some(&a), None) => c = c.checked_mul(a)?,
            _ => return None,
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[u64]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    fn ideal(dim: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(dim, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    #[test]
    fn x_squared_at_n_ten() {
        let m = MonomialIdeal::maximal(2);
        let fm = f_max(&ideal(2, &[&[2, 0]]), &m, 10).unwrap();
        assert_eq!(fm.value, Growth::Finite(6));
        assert_eq!(fm.witness, Some(ev(&[1, 5])));
    }

    #[test]
    fn m_primary_is_infinite() {
        let m = MonomialIdeal::maximal(2);
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        for n in 4..10 {
            assert_eq!(f_max(&i, &m, n).unwrap().value, Growth::Infinite, "n={n}");
        }
    }

    #[test]
    fn unit_ideal_is_infinite() {
        let m = MonomialIdeal::maximal(3);
        for n in 1..5 {
            assert_eq!(f_max(&MonomialIdeal::unit(3), &m, n).unwrap().value, Growth::Infinite);
        }
    }

    #[test]
    fn invalid_arguments() {
        let i = ideal(2, &[&[2, 0]]);
        assert!(f_max(&i, &MonomialIdeal::unit(2), 3).is_err());
        assert!(f_max(&i, &MonomialIdeal::zero(2), 3).is_err());
        assert!(f_max(&i, &MonomialIdeal::maximal(2), 0).is_err());
        assert!(f_max(&i, &MonomialIdeal::maximal(3), 2).is_err());
        assert!(growth_report(&i, &MonomialIdeal::maximal(2), 5, 4, None).is_err());
        assert!(growth_report(&i, &MonomialIdeal::maximal(2), 1, 4, Some(0)).is_err());
    }

    #[test]
    fn order_in_general_modulus() {
        let j = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(order_in(&j, &ev(&[4, 3])).unwrap(), 3);
        assert_eq!(order_in(&j, &ev(&[1, 2])).unwrap(), 0);
        let m = MonomialIdeal::maximal(3);
        assert_eq!(order_in(&m, &ev(&[1, 2, 3])).unwrap(), 6);
        let m2 = MonomialIdeal::m_power(3, 2, Some(&[1, 2])).unwrap();
        assert_eq!(order_in(&m2, &ev(&[9, 2, 3])).unwrap(), 2);
        // Materialized m agrees with the symbolic one.
        let mm = m.materialize();
        assert_eq!(order_in(&mm, &ev(&[1, 2, 3])).unwrap(), 6);
    }

    #[test]
    fn empirical_constant_formula() {
        assert_eq!(empirical_constant(vec![]), 1);
        assert_eq!(empirical_constant(vec![(10, Growth::Finite(6)), (11, Growth::Infinite)]), 2);
        // ⌊10/c⌋ <= 4 needs c >= 3.
        assert_eq!(empirical_constant(vec![(10, Growth::Finite(4))]), 3);
        assert_eq!(empirical_constant(vec![(3, Growth::Finite(0))]), 4);
    }

    #[test]
    fn report_flags_rows() {
        let m = MonomialIdeal::maximal(2);
        let r = growth_report(&ideal(2, &[&[2, 0]]), &m, 2, 12, Some(2)).unwrap();
        assert_eq!(r.rows.len(), 11);
        assert!(r.all_verified());
        assert_eq!(r.empirical_c, 2);
        let r = growth_report(&ideal(2, &[&[2, 0]]), &m, 2, 12, Some(1)).unwrap();
        assert!(!r.all_verified());
        assert!(r.failures().all(|row| row.f < Growth::Finite(row.n)));
    }

    #[test]
    fn paper_constants() {
        assert_eq!(paper_constant(&ideal(2, &[&[2, 0], &[0, 3]])), Some(6));
        assert_eq!(paper_constant(&ideal(2, &[&[4, 0]])), Some(4));
        assert_eq!(paper_constant(&ideal(2, &[&[2, 1]])), None);
        assert_eq!(paper_constant(&MonomialIdeal::unit(2)), None);
        assert_eq!(paper_constant(&MonomialIdeal::zero(2)), None);
        assert_eq!(paper_constant(&MonomialIdeal::maximal(2)), None);
    }

    #[test]
    fn growth_display() {
        assert_eq!(Growth::Infinite.to_string(), "inf");
        assert_eq!(Growth::Finite(3).to_string(), "3");
        assert!(Growth::Infinite > Growth::Finite(u64::MAX));
    }
}
