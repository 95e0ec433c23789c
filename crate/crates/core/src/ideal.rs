//! Monomial ideals in normal form, with powers of variable-subset ideals
//! (such as `m^n`) optionally held symbolically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exponent::{variable_names, ExponentVector};

/// The ideal `(x_j : j ∈ vars)^degree`, kept symbolic.
///
/// A monomial `u` lies in it iff `Σ_{j ∈ vars} u_j >= degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Floor {
    vars: Vec<usize>,
    degree: u64,
}

impl Floor {
    /// `vars` must be nonempty and `degree` positive; indices are sorted and deduplicated.
    pub fn new(mut vars: Vec<usize>, degree: u64) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::EmptySubset);
        }
        if degree == 0 {
            return Err(Error::Precondition("a floor must have positive degree".into()));
        }
        Ok(Self { vars, degree })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn contains(&self, u: &ExponentVector) -> bool {
        u.partial_degree(&self.vars) >= self.degree
    }

    /// `self ⊆ other` as ideals.
    fn is_within(&self, other: &Floor) -> bool {
        self.degree >= other.degree && self.vars.iter().all(|j| other.vars.binary_search(j).is_ok())
    }

    /// The pure powers `degree·e_j`, the vertices of this floor's Newton polyhedron.
    pub fn vertices(&self, dim: usize) -> impl Iterator<Item = ExponentVector> + '_ {
        self.vars.iter().map(move |&j| ExponentVector::pure_power(dim, j, self.degree))
    }

    /// Every exponent vector supported on `vars` of partial degree exactly `degree`.
    pub fn expand(&self, dim: usize) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut current = vec![0u64; dim];
        expand_rec(&self.vars, self.degree, &mut current, &mut out);
        out
    }
}

fn expand_rec(vars: &[usize], remaining: u64, current: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
    match vars {
        [] => {}
        [last] => {
            current[*last] = remaining;
            out.push(ExponentVector::new(current.clone()));
            current[*last] = 0;
        }
        [first, rest @ ..] => {
            for e in (0..=remaining).rev() {
                current[*first] = e;
                expand_rec(rest, remaining - e, current, out);
            }
            current[*first] = 0;
        }
    }
}

/// A monomial ideal in normal form.
///
/// Generators form an antichain under divisibility and are sorted in lex
/// monomial order; floors are irredundant and sorted. Two values are equal
/// iff their normal forms coincide, so a floor and its materialization compare
/// unequal even though they denote the same ideal (see [`Self::same_ideal`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
    floors: Vec<Floor>,
}

/// Antichain of divisibility-minimal elements in lex monomial order
/// (`x1 > x2 > ...`, largest first).
pub fn minimal_elements(mut raw: Vec<ExponentVector>) -> Vec<ExponentVector> {
    raw.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    raw.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(raw.len());
    for v in raw {
        if !kept.iter().any(|k| k.divides(&v)) {
            kept.push(v);
        }
    }
    kept.sort_unstable_by(|a, b| b.cmp(a));
    kept
}

impl MonomialIdeal {
    pub fn zero(dim: usize) -> Self {
        Self { dim, gens: Vec::new(), floors: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        Self { dim, gens: vec![ExponentVector::zero(dim)], floors: Vec::new() }
    }

    /// Normal form of the ideal generated by `raw`.
    pub fn minimalize(dim: usize, raw: Vec<ExponentVector>) -> Result<Self> {
        Self::with_floors(dim, raw, Vec::new())
    }

    pub fn with_floors(dim: usize, gens: Vec<ExponentVector>, floors: Vec<Floor>) -> Result<Self> {
        for g in &gens {
            check_dim(dim, g.dim())?;
        }
        for fl in &floors {
            if let Some(&j) = fl.vars.last() {
                if j >= dim {
                    return Err(Error::VariableOutOfRange { index: j, dim });
                }
            }
        }
        Ok(Self::normalize(dim, gens, floors))
    }

    fn normalize(dim: usize, gens: Vec<ExponentVector>, mut floors: Vec<Floor>) -> Self {
        if gens.iter().any(ExponentVector::is_zero) {
            return Self::unit(dim);
        }
        floors.sort_unstable();
        floors.dedup();
        let floors: Vec<Floor> = floors
            .iter()
            .enumerate()
            .filter(|(i, f)| !floors.iter().enumerate().any(|(k, g)| k != *i && f.is_within(g)))
            .map(|(_, f)| f.clone())
            .collect();
        let gens = gens.into_iter().filter(|g| !floors.iter().any(|f| f.contains(g))).collect();
        Self { dim, gens: minimal_elements(gens), floors }
    }

    /// `(x_j : j ∈ vars)^n`, all variables when `vars` is `None`.
    ///
    /// `n = 0` gives the unit ideal; otherwise the result is a single symbolic floor.
    pub fn m_power(dim: usize, n: u64, vars: Option<&[usize]>) -> Result<Self> {
        let vars: Vec<usize> = match vars {
            Some(v) => v.to_vec(),
            None => (0..dim).collect(),
        };
        if let Some(&j) = vars.iter().find(|&&j| j >= dim) {
            return Err(Error::VariableOutOfRange { index: j, dim });
        }
        if n == 0 {
            return Ok(Self::unit(dim));
        }
        Ok(Self { dim, gens: Vec::new(), floors: vec![Floor::new(vars, n)?] })
    }

    /// The maximal ideal `m = (x1, ..., xd)`.
    pub fn maximal(dim: usize) -> Self {
        Self::m_power(dim, 1, None).expect("degree one over all variables is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn floors(&self) -> &[Floor] {
        &self.floors
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty() && self.floors.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn has_floors(&self) -> bool {
        !self.floors.is_empty()
    }

    /// Expands every floor into explicit generators.
    pub fn materialize(&self) -> Self {
        if self.floors.is_empty() {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        for f in &self.floors {
            gens.extend(f.expand(self.dim));
        }
        Self { dim: self.dim, gens: minimal_elements(gens), floors: Vec::new() }
    }

    /// Equality of the ideals denoted, regardless of representation.
    pub fn same_ideal(&self, other: &Self) -> bool {
        self.dim == other.dim && self.materialize() == other.materialize()
    }

    pub fn contains_monomial(&self, u: &ExponentVector) -> Result<bool> {
        check_dim(self.dim, u.dim())?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(u)) || self.floors.iter().any(|f| f.contains(u))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        if !other.gens.iter().all(|g| self.contains_unchecked(g)) {
            return Ok(false);
        }
        for f in &other.floors {
            if self.floors.iter().any(|mine| f.is_within(mine)) {
                continue;
            }
            if !f.expand(self.dim).iter().all(|g| self.contains_unchecked(g)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        let floors = self.floors.iter().chain(&other.floors).cloned().collect();
        Ok(Self::normalize(self.dim, gens, floors))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let (a, b) = (self.materialize(), other.materialize());
        let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
        for g in &a.gens {
            for h in &b.gens {
                gens.push(g.checked_add(h)?);
            }
        }
        Ok(Self::normalize(self.dim, gens, Vec::new()))
    }

    pub fn power(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::unit(self.dim));
        }
        let base = self.materialize();
        let mut acc = base.clone();
        for _ in 1..k {
            acc = acc.product(&base)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let (a, b) = (self.materialize(), other.materialize());
        let mut gens = Vec::with_capacity(a.gens.len() * b.gens.len());
        for g in &a.gens {
            for h in &b.gens {
                gens.push(g.lcm(h)?);
            }
        }
        Ok(Self::normalize(self.dim, gens, Vec::new()))
    }

    /// `I : u = { v : v + u ∈ I }`. Floors stay symbolic.
    pub fn colon(&self, u: &ExponentVector) -> Result<Self> {
        check_dim(self.dim, u.dim())?;
        let mut gens: Vec<ExponentVector> = self.gens.iter().map(|g| g.saturating_sub(u)).collect::<Result<_>>()?;
        let mut floors = Vec::new();
        for f in &self.floors {
            let covered = u.partial_degree(&f.vars);
            if covered >= f.degree {
                gens.push(ExponentVector::zero(self.dim));
            } else {
                floors.push(Floor { vars: f.vars.clone(), degree: f.degree - covered });
            }
        }
        Ok(Self::normalize(self.dim, gens, floors))
    }

    /// `I : J`, the intersection of `I : g` over the generators `g` of `J`.
    pub fn colon_ideal(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let other = other.materialize();
        let mut acc = Self::unit(self.dim);
        for g in &other.gens {
            acc = acc.intersection(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> Self {
        let gens = self.gens.iter().map(ExponentVector::support).collect();
        let floors = self.floors.iter().map(|f| Floor { vars: f.vars.clone(), degree: 1 }).collect();
        Self::normalize(self.dim, gens, floors)
    }

    /// Largest total degree among the generators, floors materialized.
    pub fn max_generator_degree(&self) -> u64 {
        let g = self.gens.iter().map(ExponentVector::degree).max().unwrap_or(0);
        let f = self.floors.iter().map(Floor::degree).max().unwrap_or(0);
        g.max(f)
    }

    /// Generators joined by `", "`, e.g. `x^2, x*y^2, y^3`. Floors are materialized.
    pub fn generators_string(&self) -> String {
        let names = variable_names(self.dim);
        let m = self.materialize();
        if m.gens.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, g) in m.gens.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            g.write_monomial(&mut s, &names).expect("writing to a String cannot fail");
        }
        s
    }
}

/// Parseable expression: `(x^2, y^3) + m^10 + m_{2,3}^4`; `(0)` and `(1)` for
/// the zero and unit ideals.
impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        let names = variable_names(self.dim);
        let mut parts = Vec::new();
        if !self.gens.is_empty() {
            let mut s = String::from("(");
            for (i, g) in self.gens.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                g.write_monomial(&mut s, &names)?;
            }
            s.push(')');
            parts.push(s);
        }
        for fl in &self.floors {
            if fl.vars.len() == self.dim {
                parts.push(format!("m^{}", fl.degree));
            } else {
                let idx: Vec<String> = fl.vars.iter().map(|j| (j + 1).to_string()).collect();
                parts.push(format!("m_{{{}}}^{}", idx.join(","), fl.degree));
            }
        }
        f.write_str(&parts.join(" + "))
    }
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
    fn minimalize_drops_multiples() {
        let i = ideal(2, &[&[2, 0], &[3, 0], &[0, 3]]);
        assert_eq!(i.generators(), &[ev(&[2, 0]), ev(&[0, 3])]);
    }

    #[test]
    fn minimalize_empty_is_zero() {
        let i = MonomialIdeal::minimalize(2, vec![]).unwrap();
        assert!(i.is_zero());
        assert_eq!(i, MonomialIdeal::zero(2));
    }

    #[test]
    fn minimalize_rejects_mixed_dimensions() {
        let err = MonomialIdeal::minimalize(2, vec![ev(&[1, 0]), ev(&[1, 0, 0])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn zero_vector_makes_unit() {
        let i = ideal(2, &[&[0, 0], &[1, 1]]);
        assert!(i.is_unit());
        let j = MonomialIdeal::m_power(2, 3, None).unwrap().sum(&MonomialIdeal::unit(2)).unwrap();
        assert!(j.is_unit());
        assert!(j.floors().is_empty());
    }

    #[test]
    fn sum_keeps_floor_symbolic() {
        let i = ideal(2, &[&[2, 0]]);
        let m5 = MonomialIdeal::m_power(2, 5, None).unwrap();
        let s = i.sum(&m5).unwrap();
        assert_eq!(s.generators(), &[ev(&[2, 0])]);
        assert_eq!(s.floors(), &[Floor::new(vec![0, 1], 5).unwrap()]);
    }

    #[test]
    fn sum_drops_generators_inside_floor() {
        let i = ideal(2, &[&[3, 4], &[1, 0]]);
        let s = i.sum(&MonomialIdeal::m_power(2, 5, None).unwrap()).unwrap();
        assert_eq!(s.generators(), &[ev(&[1, 0])]);
    }

    #[test]
    fn redundant_floors_are_dropped() {
        let a = MonomialIdeal::m_power(3, 4, Some(&[1, 2])).unwrap();
        let b = MonomialIdeal::m_power(3, 3, None).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(s.floors(), &[Floor::new(vec![0, 1, 2], 3).unwrap()]);
    }

    #[test]
    fn power_of_two_generators() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let p = i.power(2).unwrap();
        assert_eq!(p.generators(), &[ev(&[4, 0]), ev(&[2, 3]), ev(&[0, 6])]);
        assert!(i.power(0).unwrap().is_unit());
    }

    #[test]
    fn intersection_examples() {
        let x2 = ideal(2, &[&[2, 0]]);
        let y3 = ideal(2, &[&[0, 3]]);
        assert_eq!(x2.intersection(&y3).unwrap().generators(), &[ev(&[2, 3])]);
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let x = ideal(2, &[&[1, 0]]);
        assert_eq!(i.intersection(&x).unwrap().generators(), &[ev(&[2, 0]), ev(&[1, 3])]);
        assert_eq!(i.intersection(&MonomialIdeal::zero(2)).unwrap(), MonomialIdeal::zero(2));
    }

    #[test]
    fn colon_examples() {
        let i = ideal(2, &[&[2, 1]]);
        assert_eq!(i.colon(&ev(&[1, 0])).unwrap().generators(), &[ev(&[1, 1])]);
        assert_eq!(i.colon(&ev(&[0, 0])).unwrap(), i);
        let j = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(j.colon(&ev(&[1, 1])).unwrap().generators(), &[ev(&[1, 0]), ev(&[0, 2])]);
    }

    #[test]
    fn colon_of_floor_lowers_degree() {
        let m5 = MonomialIdeal::m_power(2, 5, None).unwrap();
        let c = m5.colon(&ev(&[1, 2])).unwrap();
        assert_eq!(c, MonomialIdeal::m_power(2, 2, None).unwrap());
        assert!(m5.colon(&ev(&[3, 2])).unwrap().is_unit());
    }

    #[test]
    fn colon_by_ideal() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let j = ideal(2, &[&[1, 0], &[0, 1]]);
        let c = i.colon_ideal(&j).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let v = ev(&[a, b]);
                let expect =
                    i.contains_monomial(&ev(&[a + 1, b])).unwrap() && i.contains_monomial(&ev(&[a, b + 1])).unwrap();
                assert_eq!(c.contains_monomial(&v).unwrap(), expect, "{v}");
            }
        }
    }

    #[test]
    fn radical_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(i.radical().generators(), &[ev(&[1, 0]), ev(&[0, 1])]);
        let j = ideal(2, &[&[2, 4]]);
        assert_eq!(j.radical().generators(), &[ev(&[1, 1])]);
        let m7 = MonomialIdeal::m_power(3, 7, None).unwrap();
        assert_eq!(m7.radical(), MonomialIdeal::maximal(3));
    }

    #[test]
    fn membership_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert!(i.contains_monomial(&ev(&[2, 3])).unwrap());
        assert!(!i.contains_monomial(&ev(&[1, 2])).unwrap());
        let m5 = MonomialIdeal::m_power(2, 5, None).unwrap();
        assert!(m5.contains_monomial(&ev(&[3, 4])).unwrap());
        assert!(!m5.contains_monomial(&ev(&[2, 2])).unwrap());
        assert!(m5.contains_monomial(&ev(&[1])).is_err());
    }

    #[test]
    fn m_power_examples() {
        let m3 = MonomialIdeal::m_power(2, 3, None).unwrap().materialize();
        assert_eq!(m3.generators(), &[ev(&[3, 0]), ev(&[2, 1]), ev(&[1, 2]), ev(&[0, 3])]);
        let m = MonomialIdeal::m_power(3, 1, None).unwrap().materialize();
        assert_eq!(m.generators(), &[ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 1])]);
        let s = MonomialIdeal::m_power(3, 4, Some(&[1, 2])).unwrap();
        assert!(!s.contains_monomial(&ev(&[9, 0, 0])).unwrap());
        assert!(s.contains_monomial(&ev(&[0, 2, 2])).unwrap());
        assert!(MonomialIdeal::m_power(3, 0, None).unwrap().is_unit());
        assert_eq!(MonomialIdeal::m_power(3, 2, Some(&[])), Err(Error::EmptySubset));
        assert!(MonomialIdeal::m_power(3, 2, Some(&[3])).is_err());
    }

    #[test]
    fn materialized_size_of_m36_in_three_variables() {
        let m = MonomialIdeal::m_power(3, 36, None).unwrap().materialize();
        assert_eq!(m.generators().len(), 703);
    }

    #[test]
    fn containment_between_ideals() {
        let m2 = MonomialIdeal::m_power(2, 2, None).unwrap();
        let m3 = MonomialIdeal::m_power(2, 3, None).unwrap();
        assert!(m2.contains_ideal(&m3).unwrap());
        assert!(!m3.contains_ideal(&m2).unwrap());
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(i.contains_ideal(&m2).unwrap());
        assert!(m2.contains_ideal(&i).unwrap());
        assert!(i.same_ideal(&m2));
    }

    #[test]
    fn display_forms() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]).sum(&MonomialIdeal::m_power(2, 10, None).unwrap()).unwrap();
        assert_eq!(i.to_string(), "(x^2, y^3) + m^10");
        let j = MonomialIdeal::m_power(3, 4, Some(&[1, 2])).unwrap();
        assert_eq!(j.to_string(), "m_{2,3}^4");
        assert_eq!(MonomialIdeal::zero(2).to_string(), "(0)");
        assert_eq!(MonomialIdeal::unit(2).to_string(), "(1)");
        assert_eq!(ideal(2, &[&[2, 0], &[1, 2], &[0, 3]]).generators_string(), "x^2, x*y^2, y^3");
    }
}
