//! Exact rational feasibility for systems `A x = b, x >= 0`.
//!
//! Phase-one primal simplex with Bland's rule. Both outcomes carry a
//! certificate that can be checked without trusting the solver: a feasible
//! point, or a Farkas vector `y` with `yᵀA >= 0` and `yᵀb < 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A point `x >= 0` with `A x = b`.
    Feasible(Vec<Rational>),
    /// A vector `y` with `yᵀA >= 0` componentwise and `yᵀb < 0`.
    Infeasible(Vec<Rational>),
}

struct Tableau {
    /// `B⁻¹ A` including artificial columns, row-major.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs of the phase-one objective.
    reduced: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.reduced[col].is_zero() {
            let factor = self.reduced[col].clone();
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic variable index.
    fn run(&mut self) {
        while let Some(col) = self.reduced.iter().position(Signed::is_negative) {
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase one is bounded below by zero, so some row always qualifies.
            let (row, _) = best.expect("phase-one objective is bounded");
            self.pivot(row, col);
        }
    }
}

/// Decides whether `{x >= 0 : A x = b}` is nonempty.
///
/// `a` is row-major with every row of the same length.
pub fn solve_feasibility(a: &[Vec<Rational>], b: &[Rational]) -> Feasibility {
    let m = a.len();
    assert_eq!(m, b.len(), "row count of A and b differ");
    let n = a.first().map_or(0, Vec::len);

    let signs: Vec<bool> = b.iter().map(Signed::is_negative).collect();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(&signs)
        .map(|(row, &neg)| {
            assert_eq!(row.len(), n, "ragged constraint matrix");
            if neg {
                row.iter().map(|v| -v).collect()
            } else {
                row.clone()
            }
        })
        .collect();
    let rhs: Vec<Rational> = b.iter().map(Signed::abs).collect();

    // Reuse unit columns already present as the starting basis; add an
    // artificial for every row left uncovered.
    let mut initial = vec![usize::MAX; m];
    for j in 0..n {
        let mut hit = None;
        let mut is_unit = true;
        for (i, row) in rows.iter().enumerate() {
            if row[j].is_zero() {
                continue;
            }
            if row[j].is_one() && hit.is_none() {
                hit = Some(i);
            } else {
                is_unit = false;
                break;
            }
        }
        if let (true, Some(i)) = (is_unit, hit) {
            if initial[i] == usize::MAX {
                initial[i] = j;
            }
        }
    }
    let mut width = n;
    let mut artificial = Vec::new();
    for (i, slot) in initial.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = width;
            artificial.push((i, width));
            width += 1;
        }
    }
    for row in rows.iter_mut() {
        row.resize(width, Rational::zero());
    }
    for &(i, col) in &artificial {
        rows[i][col] = Rational::one();
    }

    let cost = |j: usize| if j >= n { Rational::one() } else { Rational::zero() };
    let mut reduced: Vec<Rational> = (0..width).map(cost).collect();
    for &(i, _) in &artificial {
        for (r, v) in reduced.iter_mut().zip(&rows[i]) {
            *r -= v;
        }
    }

    let mut t = Tableau { rows, rhs, reduced, basis: initial.clone() };
    t.run();

    let objective: Rational = t.basis.iter().zip(&t.rhs).filter(|(&j, _)| j >= n).map(|(_, v)| v.clone()).sum();

    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (&j, v) in t.basis.iter().zip(&t.rhs) {
            if j < n {
                x[j] = v.clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        // Optimal duals of phase one: y_i = c_{B0(i)} - reduced_{B0(i)}.
        // The Farkas vector is their negation, with the row flips undone.
        let farkas = initial
            .iter()
            .zip(&signs)
            .map(|(&j, &neg)| {
                let y = cost(j) - &t.reduced[j];
                if neg {
                    y
                } else {
                    -y
                }
            })
            .collect();
        Feasibility::Infeasible(farkas)
    }
}

/// `A x = b` and `x >= 0`.
pub fn check_feasible_point(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter()
            .zip(b)
            .all(|(row, bi)| row.len() == x.len() && row.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>() == *bi)
}

/// `yᵀA >= 0` and `yᵀb < 0`.
pub fn check_farkas(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    if y.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, Vec::len);
    let cols_ok = (0..n).all(|j| {
        let s: Rational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
        !s.is_negative()
    });
    let yb: Rational = b.iter().zip(y).map(|(p, q)| p * q).sum();
    cols_ok && yb.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn feasible_simple() {
        // x + y = 2, x - y = 0
        let a = mat(&[&[1, 1], &[1, -1]]);
        let b = vec![r(2), r(0)];
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(x) => {
                assert!(check_feasible_point(&a, &b, &x));
                assert_eq!(x, vec![r(1), r(1)]);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_simple() {
        // x + y = -1 with x, y >= 0
        let a = mat(&[&[1, 1]]);
        let b = vec![r(-1)];
        match solve_feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert!(check_farkas(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_slack_basis() {
        // 2t1 + q1 = 1, 3t2 + q2 = 1, t1 + t2 = 1
        let a = mat(&[&[2, 0, 1, 0], &[0, 3, 0, 1], &[1, 1, 0, 0]]);
        let b = vec![r(1), r(1), r(1)];
        match solve_feasibility(&a, &b) {
            Feasibility::Infeasible(y) => assert!(check_farkas(&a, &b, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(solve_feasibility(&[], &[]), Feasibility::Feasible(vec![]));
    }

    #[test]
    fn degenerate_cycling_candidate_terminates() {
        // Beale-style degenerate system; Bland's rule must terminate.
        let a = mat(&[
            &[1, 0, 0, 1, -8, 1, 9, 0],
            &[0, 1, 0, 1, -12, -1, 3, 0],
            &[0, 0, 1, 0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 1, 1, 1, 1],
        ]);
        let b = vec![r(0), r(0), r(1), r(2)];
        match solve_feasibility(&a, &b) {
            Feasibility::Feasible(x) => assert!(check_feasible_point(&a, &b, &x)),
            Feasibility::Infeasible(y) => assert!(check_farkas(&a, &b, &y)),
        }
    }

    proptest! {
        #[test]
        fn every_outcome_is_certified(
            rows in 1usize..4,
            cols in 1usize..6,
            entries in prop::collection::vec(-4i64..5, 24),
            rhs in prop::collection::vec(-6i64..7, 4),
        ) {
            let a: Vec<Vec<Rational>> = (0..rows)
                .map(|i| (0..cols).map(|j| r(entries[i * cols + j])).collect())
                .collect();
            let b: Vec<Rational> = rhs[..rows].iter().map(|&v| r(v)).collect();
            match solve_feasibility(&a, &b) {
                Feasibility::Feasible(x) => prop_assert!(check_feasible_point(&a, &b, &x)),
                Feasibility::Infeasible(y) => prop_assert!(check_farkas(&a, &b, &y)),
            }
        }
    }
}
