use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::lp::feasible_point;
use super::vpoly::VPolytope;
use crate::error::{Error, Result};
use crate::exact::{rational_rank, rref, solve_affine, RatMatrix, RatVector, Rational};

/// Affine equations over `w_1..w_v`, optionally intersected with the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSlice {
    ambient_dim: usize,
    equations: Vec<(RatVector, Rational)>,
    orthant: bool,
}

impl HSlice {
    pub fn new(ambient_dim: usize, equations: Vec<(RatVector, Rational)>, orthant: bool) -> Result<Self> {
        if let Some((i, _)) = equations.iter().enumerate().find(|(_, (a, _))| a.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "equation {i} does not have {ambient_dim} coefficients"
            )));
        }
        Ok(HSlice { ambient_dim, equations, orthant })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equations(&self) -> &[(RatVector, Rational)] {
        &self.equations
    }

    pub fn orthant(&self) -> bool {
        self.orthant
    }

    pub fn coefficient_matrix(&self) -> RatMatrix {
        let rows: Vec<RatVector> = self.equations.iter().map(|(a, _)| a.clone()).collect();
        RatMatrix::from_rows(self.ambient_dim, &rows).expect("validated lengths")
    }

    pub fn rhs(&self) -> RatVector {
        self.equations.iter().map(|(_, b)| b.clone()).collect()
    }

    /// True when `w` satisfies every equation and, if flagged, nonnegativity.
    pub fn contains(&self, w: &[Rational]) -> bool {
        w.len() == self.ambient_dim
            && (!self.orthant || w.iter().all(|x| !x.is_negative()))
            && self.equations.iter().all(|(a, b)| crate::exact::dot(a, w) == *b)
    }
}

/// Vertices of `{w : A·w = b, w ≥ 0}` by enumerating basic feasible solutions.
///
/// With `r` independent equations, every choice of `r` basic coordinates whose
/// columns are independent gives at most one candidate; the feasible ones are
/// exactly the vertices. Feasibility and boundedness are settled first with
/// exact phase-one LPs.
pub fn vertices_of_slice(slice: &HSlice) -> Result<VPolytope> {
    if !slice.orthant {
        return Err(Error::InvalidInput("vertex enumeration needs the orthant constraint".into()));
    }
    let v = slice.ambient_dim;
    let a = slice.coefficient_matrix();
    let b = slice.rhs();
    if feasible_point(&a, &b).is_none() {
        return Err(Error::Empty);
    }
    // a nonzero recession direction r ≥ 0 with A·r = 0, normalised by Σr = 1
    let recession = a.vstack(&RatMatrix::from_rows(v, &[vec![Rational::one(); v]])?)?;
    let mut rhs = vec![Rational::zero(); a.rows()];
    rhs.push(Rational::one());
    if feasible_point(&recession, &rhs).is_some() {
        return Err(Error::Unbounded);
    }

    // independent equations in reduced form
    let mut aug = RatMatrix::zeros(a.rows(), v + 1);
    for i in 0..a.rows() {
        aug.row_mut(i)[..v].clone_from_slice(a.row(i));
        aug[(i, v)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    let r = pivots.len();
    let reduced = aug.row_block(0..r);
    let (a, b) = (reduced.col_block(0..v), reduced.column(v));

    let mut found = BTreeSet::new();
    for basis in Combinations::new(v, r) {
        let sub = select_columns(&a, &basis);
        let Some(x) = solve_affine(&sub, &b)?.unique().cloned() else {
            continue;
        };
        if x.iter().any(|t| t.is_negative()) {
            continue;
        }
        let mut w = vec![Rational::zero(); v];
        for (&k, xk) in basis.iter().zip(x) {
            w[k] = xk;
        }
        found.insert(w);
    }
    for w in &found {
        let support: Vec<usize> = (0..v).filter(|&k| !w[k].is_zero()).collect();
        if rational_rank(&select_columns(&a, &support)) != support.len() {
            return Err(Error::Invariant(format!("basic solution {w:?} is not extreme")));
        }
    }
    Ok(VPolytope::from_sorted_vertices(v, found.into_iter().collect()))
}

fn select_columns(m: &RatMatrix, cols: &[usize]) -> RatMatrix {
    let rows: Vec<RatVector> =
        (0..m.rows()).map(|i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
    RatMatrix::from_rows(cols.len(), &rows).expect("consistent")
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
