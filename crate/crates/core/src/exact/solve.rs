use num_traits::{One, Zero};

use super::matrix::{RatMatrix, RatVector, Rational};
use crate::error::{Error, Result};

/// Outcome of solving `A·x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    /// Every solution is `particular + Σ tₖ·homogeneous[k]`.
    Consistent { particular: RatVector, homogeneous: Vec<RatVector> },
    Inconsistent,
}

impl AffineSolution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, AffineSolution::Consistent { .. })
    }

    /// The solution when it is unique.
    pub fn unique(&self) -> Option<&RatVector> {
        match self {
            AffineSolution::Consistent { particular, homogeneous } if homogeneous.is_empty() => {
                Some(particular)
            }
            _ => None,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        if !inv.is_one() {
            for x in m.row_mut(r) {
                *x = &*x * &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let s = &f * &m[(r, j)];
                m[(i, j)] -= s;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rational_rank(m: &RatMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Solves `A·x = b` over ℚ.
pub fn solve_affine(a: &RatMatrix, b: &[Rational]) -> Result<AffineSolution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        aug.row_mut(i)[..n].clone_from_slice(a.row(i));
        aug[(i, n)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Ok(AffineSolution::Inconsistent);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let homogeneous = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[(r, f)].clone();
            }
            v
        })
        .collect();
    Ok(AffineSolution::Consistent { particular, homogeneous })
}
