use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::lp::feasible_point;
use crate::error::{Error, Result};
use crate::exact::{RatMatrix, RatVector, Rational};
use crate::laurent::LaurentPoly;

/// A polytope given by its vertices, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<RatVector>,
}

impl VPolytope {
    /// Convex hull of `points`: duplicates are dropped and non-extreme points
    /// are filtered out with an exact LP per point.
    pub fn from_points(ambient_dim: usize, points: impl IntoIterator<Item = RatVector>) -> Result<Self> {
        let set: BTreeSet<RatVector> = points.into_iter().collect();
        if let Some(p) = set.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {ambient_dim}",
                p.len()
            )));
        }
        let points: Vec<RatVector> = set.into_iter().collect();
        let extreme = extreme_points(&points);
        Ok(VPolytope { ambient_dim, vertices: extreme })
    }

    pub(crate) fn from_sorted_vertices(ambient_dim: usize, vertices: Vec<RatVector>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        VPolytope { ambient_dim, vertices }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull; `None` for the empty polytope.
    pub fn dimension(&self) -> Option<usize> {
        let first = self.vertices.first()?;
        let diffs: Vec<RatVector> = self.vertices[1..]
            .iter()
            .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect();
        let m = RatMatrix::from_rows(self.ambient_dim, &diffs).expect("consistent");
        Some(crate::exact::rational_rank(&m))
    }

    pub fn translate(&self, t: &[Rational]) -> Self {
        let points = self.vertices.iter().map(|p| p.iter().zip(t).map(|(a, b)| a + b).collect());
        VPolytope { ambient_dim: self.ambient_dim, vertices: sorted(points) }
    }

    /// Dilation by a nonnegative factor.
    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return VPolytope {
                ambient_dim: self.ambient_dim,
                vertices: vec![vec![Rational::zero(); self.ambient_dim]],
            };
        }
        let points = self.vertices.iter().map(|p| p.iter().map(|a| a * factor).collect());
        VPolytope { ambient_dim: self.ambient_dim, vertices: sorted(points) }
    }

    /// The polytope translated so that its lexicographically smallest vertex is the origin.
    pub fn normalized_translation(&self) -> Self {
        match self.vertices.first() {
            None => self.clone(),
            Some(v0) => {
                let t: RatVector = v0.iter().map(|x| -x).collect();
                self.translate(&t)
            }
        }
    }
}

fn sorted(points: impl Iterator<Item = RatVector>) -> Vec<RatVector> {
    points.collect::<BTreeSet<_>>().into_iter().collect()
}

/// True when `p` lies in the convex hull of `others`.
pub fn in_convex_hull(p: &[Rational], others: &[&RatVector]) -> bool {
    if others.is_empty() {
        return false;
    }
    let dim = p.len();
    // λ ≥ 0, Σλ = 1, Σ λ_k q_k = p
    let mut a = RatMatrix::zeros(dim + 1, others.len());
    for (k, q) in others.iter().enumerate() {
        for i in 0..dim {
            a[(i, k)] = q[i].clone();
        }
        a[(dim, k)] = Rational::one();
    }
    let mut b: RatVector = p.to_vec();
    b.push(Rational::one());
    feasible_point(&a, &b).is_some()
}

fn extreme_points(points: &[RatVector]) -> Vec<RatVector> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let (first, last) = (0, points.len() - 1);
    points
        .iter()
        .enumerate()
        .filter(|&(i, p)| {
            // lexicographic extremes are always vertices
            if i == first || i == last {
                return true;
            }
            let others: Vec<&RatVector> =
                points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q).collect();
            !in_convex_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Coordinate projection onto `coords`, followed by extreme-point filtering.
pub fn project(p: &VPolytope, coords: &[usize]) -> Result<VPolytope> {
    let mut seen = BTreeSet::new();
    for &c in coords {
        if c >= p.ambient_dim || !seen.insert(c) {
            return Err(Error::InvalidInput(format!("bad projection coordinate {c}")));
        }
    }
    let points = p.vertices.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect());
    VPolytope::from_points(coords.len(), points.collect::<Vec<RatVector>>())
}

/// True when distinct vertices of `p` have distinct images under the projection.
pub fn projection_is_injective(p: &VPolytope, coords: &[usize]) -> bool {
    let images: BTreeSet<RatVector> =
        p.vertices.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()).collect();
    images.len() == p.vertices.len()
}

/// Convex hull of the exponent vectors of `f`.
pub fn newton_polytope(f: &LaurentPoly) -> Result<VPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<RatVector> = f
        .terms()
        .map(|(e, _)| e.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    VPolytope::from_points(f.nvars(), points)
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "Minkowski sum of dimensions {} and {}",
            p.ambient_dim, q.ambient_dim
        )));
    }
    let mut points = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            points.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    VPolytope::from_points(p.ambient_dim, points)
}
