//! Integral closure of monomial ideals through the Newton polyhedron.
//!
//! A monomial `x^β` is integral over `I` iff `β >= Σ t_i α_i` componentwise for
//! some convex weights `t` on the exponent vectors `α_i` of the generators.
//! Each query is an exact LP and returns a checkable [`HullCertificate`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::{minimal_elements, MonomialIdeal};
use crate::lp::{solve_feasibility, Feasibility, Rational};

/// Outcome of a hull-membership query, in a form that can be re-verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullCertificate {
    pub point: ExponentVector,
    /// Vertices of the Newton polyhedron the weights refer to.
    pub vertices: Vec<ExponentVector>,
    pub outcome: HullOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullOutcome {
    /// `point = Σ weights_i · vertices_i + slacks`, weights summing to one.
    Feasible {
        #[serde(serialize_with = "ser_rationals")]
        weights: Vec<Rational>,
        #[serde(serialize_with = "ser_rationals")]
        slacks: Vec<Rational>,
    },
    /// Integer functional `w >= 0` with `⟨w, point⟩ < level <= ⟨w, v⟩` for every vertex `v`.
    Infeasible {
        #[serde(serialize_with = "ser_integers")]
        normal: Vec<BigInt>,
        #[serde(serialize_with = "ser_integer")]
        level: BigInt,
    },
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_integers<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_integer<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl HullCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, HullOutcome::Feasible { .. })
    }

    /// Re-checks the certificate in exact arithmetic.
    pub fn validate(&self) -> bool {
        let d = self.point.dim();
        if self.vertices.iter().any(|v| v.dim() != d) {
            return false;
        }
        match &self.outcome {
            HullOutcome::Feasible { weights, slacks } => {
                if weights.len() != self.vertices.len() || slacks.len() != d {
                    return false;
                }
                if weights.iter().chain(slacks).any(Signed::is_negative) {
                    return false;
                }
                if weights.iter().sum::<Rational>() != Rational::one() {
                    return false;
                }
                (0..d).all(|j| {
                    let combo: Rational = weights
                        .iter()
                        .zip(&self.vertices)
                        .map(|(t, v)| t * Rational::from_integer(v.get(j).into()))
                        .sum();
                    combo + &slacks[j] == Rational::from_integer(self.point.get(j).into())
                })
            }
            HullOutcome::Infeasible { normal, level } => {
                if normal.len() != d || normal.iter().any(Signed::is_negative) {
                    return false;
                }
                let pair = |v: &ExponentVector| -> BigInt {
                    normal.iter().zip(v.coords()).map(|(w, &c)| w * BigInt::from(c)).sum()
                };
                pair(&self.point) < *level && self.vertices.iter().all(|v| pair(v) >= *level)
            }
        }
    }
}

/// Vertices spanning the Newton polyhedron of `ideal`: the minimal generators
/// together with the pure powers `n·e_j` of every floor `(S, n)`, minimalized.
pub fn newton_vertices(ideal: &MonomialIdeal) -> Vec<ExponentVector> {
    let mut pts: Vec<ExponentVector> = ideal.generators().to_vec();
    for f in ideal.floors() {
        pts.extend(f.vertices(ideal.dim()));
    }
    minimal_elements(pts)
}

/// Decides `x^β ∈ closure(I)` by exact LP feasibility of
/// `Σ t_i α_i + q = β, Σ t_i = 1, t, q >= 0`.
pub fn hull_membership(ideal: &MonomialIdeal, beta: &ExponentVector) -> Result<HullCertificate> {
    check_dim(ideal.dim(), beta.dim())?;
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(hull_membership_with(newton_vertices(ideal), beta))
}

fn hull_membership_with(vertices: Vec<ExponentVector>, beta: &ExponentVector) -> HullCertificate {
    let d = beta.dim();
    let r = vertices.len();
    let int = |v: u64| Rational::from_integer(BigInt::from(v));

    // A vertex dividing β is its own certificate.
    if let Some(i) = vertices.iter().position(|v| v.divides(beta)) {
        let mut weights = vec![Rational::zero(); r];
        weights[i] = Rational::one();
        let slacks = (0..d).map(|j| int(beta.get(j) - vertices[i].get(j))).collect();
        return HullCertificate { point: beta.clone(), vertices, outcome: HullOutcome::Feasible { weights, slacks } };
    }

    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    for j in 0..d {
        let mut row: Vec<Rational> = vertices.iter().map(|v| int(v.get(j))).collect();
        row.extend((0..d).map(|k| if k == j { Rational::one() } else { Rational::zero() }));
        a.push(row);
    }
    let mut last: Vec<Rational> = vec![Rational::one(); r];
    last.extend(std::iter::repeat(Rational::zero()).take(d));
    a.push(last);
    let mut b: Vec<Rational> = beta.coords().iter().map(|&c| int(c)).collect();
    b.push(Rational::one());

    let outcome = match solve_feasibility(&a, &b) {
        Feasibility::Feasible(x) => {
            let slacks = x[r..].to_vec();
            let mut weights = x;
            weights.truncate(r);
            HullOutcome::Feasible { weights, slacks }
        }
        Feasibility::Infeasible(y) => {
            // w = y[..d], level = -y[d]; scale to coprime integers.
            let mut raw: Vec<Rational> = y[..d].to_vec();
            raw.push(-&y[d]);
            let (normal, level) = to_coprime_integers(raw);
            HullOutcome::Infeasible { normal, level }
        }
    };
    HullCertificate { point: beta.clone(), vertices, outcome }
}

/// Clears denominators and divides out the common gcd; the last entry is split off.
fn to_coprime_integers(v: Vec<Rational>) -> (Vec<BigInt>, BigInt) {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    let level = ints.pop().expect("level entry present");
    (ints, level)
}

pub fn in_closure(ideal: &MonomialIdeal, beta: &ExponentVector) -> Result<bool> {
    Ok(hull_membership(ideal, beta)?.is_feasible())
}

/// Minimal generators of the integral closure.
///
/// Every minimal lattice point of the Newton polyhedron lies in the box
/// `[0, max_i α_i]`, which is swept in order of increasing total degree so
/// that a point not divisible by an earlier acceptance is minimal.
pub fn integral_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    let dim = ideal.dim();
    if ideal.is_zero() {
        return MonomialIdeal::zero(dim);
    }
    if ideal.is_unit() {
        return MonomialIdeal::unit(dim);
    }
    let vertices = newton_vertices(ideal);
    let mut bound = vec![0u64; dim];
    for v in &vertices {
        for (b, &c) in bound.iter_mut().zip(v.coords()) {
            *b = (*b).max(c);
        }
    }
    let total: u64 = bound.iter().sum();

    let mut accepted: Vec<ExponentVector> = Vec::new();
    let mut layer = Vec::new();
    for degree in 0..=total {
        layer.clear();
        box_layer(&bound, degree, &mut layer);
        for beta in layer.drain(..) {
            if accepted.iter().any(|a| a.divides(&beta)) {
                continue;
            }
            if vertices.iter().any(|v| v.divides(&beta)) || hull_membership_with(vertices.clone(), &beta).is_feasible()
            {
                accepted.push(beta);
            }
        }
    }
    MonomialIdeal::minimalize(dim, accepted).expect("all points share the ideal's dimension")
}

/// Every vector `v` with `0 <= v <= bound` and total degree `degree`.
fn box_layer(bound: &[u64], degree: u64, out: &mut Vec<ExponentVector>) {
    fn rec(bound: &[u64], suffix_cap: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
        let j = cur.len();
        if j == bound.len() {
            if left == 0 {
                out.push(ExponentVector::new(cur.clone()));
            }
            return;
        }
        let rest = suffix_cap[j + 1];
        let lo = left.saturating_sub(rest);
        let hi = left.min(bound[j]);
        if lo > hi {
            return;
        }
        for e in (lo..=hi).rev() {
            cur.push(e);
            rec(bound, suffix_cap, left - e, cur, out);
            cur.pop();
        }
    }
    let mut suffix_cap = vec![0u64; bound.len() + 1];
    for j in (0..bound.len()).rev() {
        suffix_cap[j] = suffix_cap[j + 1] + bound[j];
    }
    rec(bound, &suffix_cap, degree, &mut Vec::with_capacity(bound.len()), out);
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> bool {
    integral_closure(ideal) == ideal.materialize()
}
