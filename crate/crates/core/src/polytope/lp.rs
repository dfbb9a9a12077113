//! Exact phase-one simplex for feasibility of `{x : A·x = b, x ≥ 0}`.

use num_traits::{Signed, Zero};

use crate::exact::{RatMatrix, Rational};

/// A feasible point of `A·x = b, x ≥ 0`, or `None` if the system is infeasible.
///
/// Bland's rule is used for pivoting, so the method terminates on degenerate
/// problems.
pub fn feasible_point(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(m, b.len());
    // columns: x (n), artificials (m), rhs
    let width = n + m + 1;
    let mut t = RatMatrix::zeros(m, width);
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[(i, j)] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        t[(i, n + i)] = Rational::from_integer(1.into());
        t[(i, width - 1)] = b[i].abs();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the objective Σ artificials, expressed in nonbasic terms
    let mut cost = vec![Rational::zero(); width];
    for i in 0..m {
        for (j, c) in cost.iter_mut().enumerate() {
            if j < n || j == width - 1 {
                *c -= &t[(i, j)];
            }
        }
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[(i, enter)].is_positive() {
                continue;
            }
            let ratio = &t[(i, width - 1)] / &t[(i, enter)];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // objective bounded below by zero, so a leaving row always exists
        let (row, _) = leave.expect("phase one is bounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[(i, width - 1)].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut RatMatrix, cost: &mut [Rational], row: usize, col: usize) {
    let width = t.cols();
    let p = t[(row, col)].clone();
    for j in 0..width {
        let v = &t[(row, j)] / &p;
        t[(row, j)] = v;
    }
    for i in 0..t.rows() {
        if i == row || t[(i, col)].is_zero() {
            continue;
        }
        let f = t[(i, col)].clone();
        for j in 0..width {
            let s = &f * &t[(row, j)];
            t[(i, j)] -= s;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for j in 0..width {
            cost[j] -= &f * &t[(row, j)];
        }
    }
}
