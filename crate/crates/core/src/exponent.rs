//! Exponent vectors of monomials in `d` variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A point of `ℕ^d`; the monomial `x1^a1 * ... * xd^ad`.
///
/// Ordering is lexicographic on the coordinates, which is the canonical
/// generator order inside a [`MonomialIdeal`](crate::MonomialIdeal).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// `n·e_j`, the pure power `x_j^n`.
    pub fn pure_power(dim: usize, var: usize, n: u64) -> Self {
        let mut coords = vec![0; dim];
        coords[var] = n;
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn get(&self, var: usize) -> u64 {
        self.0[var]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total degree. Saturates rather than overflowing; exponents anywhere
    /// near `u64::MAX / d` are rejected by the checked arithmetic elsewhere.
    pub fn degree(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &c| acc.saturating_add(c))
    }

    /// Sum of the coordinates indexed by `vars`.
    pub fn partial_degree(&self, vars: &[usize]) -> u64 {
        vars.iter().fold(0u64, |acc, &j| acc.saturating_add(self.0[j]))
    }

    /// `self | other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_scale(&self, k: u64) -> Result<Self> {
        self.0.iter().map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow)).collect::<Result<Vec<_>>>().map(Self)
    }

    /// Componentwise maximum (the lcm of the two monomials).
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Componentwise `max(self - other, 0)`; equals `lcm(self, other) - other`.
    pub fn saturating_sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect()))
    }

    /// The 0/1 support indicator.
    pub fn support(&self) -> Self {
        Self(self.0.iter().map(|&c| u64::from(c > 0)).collect())
    }

    /// Writes the monomial using the given variable names, `1` for the zero vector.
    pub(crate) fn write_monomial(&self, f: &mut impl fmt::Write, names: &[String]) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[j])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }

    /// Renders as a monomial with the default variable names for this dimension.
    pub fn to_monomial_string(&self) -> String {
        let mut s = String::new();
        self.write_monomial(&mut s, &variable_names(self.dim())).expect("writing to a String cannot fail");
        s
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u64; N]> for ExponentVector {
    fn from(v: [u64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `x, y, z` when `dim <= 3`, otherwise `x1 .. xd`.
pub fn variable_names(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}
