use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::slice::Combinations;
use super::vpoly::VPolytope;
use crate::cluster::{g_vectors, Atlas};
use crate::error::{Error, Result};
use crate::exact::{
    dot, primitive, primitive_from_rational, rational_rank, solve_affine, AffineSolution,
    RatMatrix, RatVector, Rational,
};

/// A rational polyhedral cone given by primitive ray generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<Vec<BigInt>>,
}

impl Cone {
    /// Normalizes generators to primitive vectors and rejects parallel pairs.
    pub fn new(rays: &[Vec<BigInt>]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for r in rays {
            if r.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput("zero ray".into()));
            }
            if !set.insert(primitive(r)) {
                return Err(Error::InvalidInput(format!("parallel rays {r:?}")));
            }
        }
        Ok(Cone { rays: set.into_iter().collect() })
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }
}

/// A finite collection of maximal cones over a shared list of primitive rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Rays are made primitive and sorted; cones are re-indexed and sorted, so
    /// equal fans have equal representations.
    pub fn new(ambient_dim: usize, rays: &[Vec<BigInt>], cones: &[Vec<usize>]) -> Result<Self> {
        let mut canonical: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
        for r in rays {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!("ray {r:?} in dimension {ambient_dim}")));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput("zero ray".into()));
            }
            canonical.insert(primitive(r), 0);
        }
        for (i, v) in canonical.values_mut().enumerate() {
            *v = i;
        }
        let index: Vec<usize> = rays.iter().map(|r| canonical[&primitive(r)]).collect();
        let mut cone_set = BTreeSet::new();
        for c in cones {
            let mut mapped = Vec::with_capacity(c.len());
            for &r in c {
                let &i = index.get(r).ok_or(Error::IndexOutOfRange { index: r, n: rays.len() })?;
                mapped.push(i);
            }
            mapped.sort_unstable();
            mapped.dedup();
            cone_set.insert(mapped);
        }
        Ok(Fan {
            ambient_dim,
            rays: canonical.into_keys().collect(),
            cones: cone_set.into_iter().collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Maximal cones as sorted ray-index sets.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .map(|c| Cone { rays: c.iter().map(|&i| self.rays[i].clone()).collect() })
            .collect()
    }

    /// The fan with every ray negated.
    pub fn negated(&self) -> Fan {
        let rays: Vec<Vec<BigInt>> = self.rays.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        Fan::new(self.ambient_dim, &rays, &self.cones).expect("valid fan")
    }

    /// Checks that the fan is simplicial and complete: every maximal cone has
    /// `d` independent rays, every wall lies in exactly two maximal cones on
    /// opposite sides, and a generic point lies in exactly one cone.
    pub fn is_complete_simplicial(&self) -> bool {
        let d = self.ambient_dim;
        let rat_rays: Vec<RatVector> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let matrix = |idx: &[usize]| {
            RatMatrix::from_rows(d, &idx.iter().map(|&i| rat_rays[i].clone()).collect::<Vec<_>>())
                .expect("consistent")
        };
        if self.cones.is_empty() {
            return false;
        }
        if self.cones.iter().any(|c| c.len() != d || rational_rank(&matrix(c)) != d) {
            return false;
        }
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in &self.cones {
            for skip in 0..d {
                let wall: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                walls.entry(wall).or_default().push(c[skip]);
            }
        }
        for (wall, opposite) in &walls {
            if opposite.len() != 2 {
                return false;
            }
            // normal to the wall: kernel of the wall rays
            let normal = if d == 1 {
                vec![Rational::from_integer(1.into())]
            } else {
                match solve_affine(&matrix(wall), &vec![Rational::zero(); d - 1]) {
                    Ok(AffineSolution::Consistent { homogeneous, .. }) if homogeneous.len() == 1 => {
                        homogeneous[0].clone()
                    }
                    _ => return false,
                }
            };
            let s0 = dot(&normal, &rat_rays[opposite[0]]);
            let s1 = dot(&normal, &rat_rays[opposite[1]]);
            if s0.is_zero() || s1.is_zero() || s0.is_positive() == s1.is_positive() {
                return false;
            }
        }
        // generic point: count cones containing it in their interior
        for attempt in 0..8i64 {
            let point: RatVector = (0..d)
                .map(|k| Rational::new((7 + 13 * k as i64 + attempt).into(), (3 + 2 * k as i64 + attempt).into()))
                .collect();
            let mut inside = 0;
            let mut on_boundary = false;
            for c in &self.cones {
                let m = matrix(c).transpose();
                let Ok(sol) = solve_affine(&m, &point) else { return false };
                let Some(lambda) = sol.unique().cloned() else { return false };
                if lambda.iter().all(|x| x.is_positive()) {
                    inside += 1;
                } else if lambda.iter().all(|x| !x.is_negative()) {
                    on_boundary = true;
                }
            }
            if !on_boundary {
                return inside == 1;
            }
        }
        false
    }
}

/// Rays are the g-vectors of `atlas` (built over principal coefficients) and
/// maximal cones are its clusters.
pub fn g_vector_fan(atlas: &Atlas) -> Result<Fan> {
    let rays: Vec<Vec<BigInt>> =
        g_vectors(atlas)?.into_iter().map(|g| g.0.into_iter().map(BigInt::from).collect()).collect();
    let cones: Vec<Vec<usize>> = atlas.clusters().iter().map(|c| c.members.clone()).collect();
    Fan::new(atlas.rank(), &rays, &cones)
}

/// Outer normal fan of a polytope together with its facet data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub fan: Fan,
    /// Set when the polytope is not full-dimensional; every cone then contains
    /// the orthogonal complement of its affine hull.
    pub degenerate: bool,
    /// Primitive outer facet normals (relative to the affine hull).
    pub facet_normals: Vec<Vec<BigInt>>,
}

/// One maximal cone per vertex, generated by the outer normals of the facets
/// through that vertex.
///
/// Facets are found by testing the hyperplane through every affinely
/// independent `k`-subset of vertices, `k` the dimension of the polytope.
/// For a lower-dimensional polytope the normals are taken inside the linear
/// span of its edge directions and a basis of the orthogonal complement is
/// added to every cone in both signs.
pub fn outer_normal_fan(p: &VPolytope) -> Result<NormalFan> {
    let n = p.ambient_dim();
    let verts = p.vertices();
    let Some(k) = p.dimension() else {
        return Err(Error::Empty);
    };

    let diffs: Vec<RatVector> =
        verts[1..].iter().map(|q| q.iter().zip(&verts[0]).map(|(a, b)| a - b).collect()).collect();
    // orthogonal complement of the direction space
    let lineality: Vec<Vec<BigInt>> = if k == n {
        Vec::new()
    } else {
        let m = RatMatrix::from_rows(n, &diffs)?;
        match solve_affine(&m, &vec![Rational::zero(); diffs.len()])? {
            AffineSolution::Consistent { homogeneous, .. } => {
                homogeneous.iter().map(|h| primitive_from_rational(h)).collect()
            }
            AffineSolution::Inconsistent => unreachable!("homogeneous systems are consistent"),
        }
    };

    let facets = if k == n && k > 0 {
        facets_small_integer(verts, n).map_or_else(|| facets_exact(verts, k, &lineality), Ok)?
    } else {
        facets_exact(verts, k, &lineality)?
    };

    let mut rays: Vec<Vec<BigInt>> = facets.keys().cloned().collect();
    let facet_count = rays.len();
    for l in &lineality {
        rays.push(l.clone());
        rays.push(l.iter().map(|x| -x).collect());
    }
    let cones: Vec<Vec<usize>> = (0..verts.len())
        .map(|u| {
            let mut c: Vec<usize> =
                facets.values().enumerate().filter(|(_, on)| on.contains(&u)).map(|(i, _)| i).collect();
            c.extend(facet_count..rays.len());
            c
        })
        .collect();
    Ok(NormalFan {
        fan: Fan::new(n, &rays, &cones)?,
        degenerate: k < n,
        facet_normals: facets.into_keys().collect(),
    })
}

type Facets = BTreeMap<Vec<BigInt>, Vec<usize>>;

/// Facets by testing the hyperplane through every affinely independent
/// `k`-subset of vertices, in exact rational arithmetic.
fn facets_exact(verts: &[RatVector], k: usize, lineality: &[Vec<BigInt>]) -> Result<Facets> {
    let n = verts.first().map_or(0, Vec::len);
    let rat = |v: &[BigInt]| -> RatVector { v.iter().map(|x| Rational::from_integer(x.clone())).collect() };
    let mut facets = Facets::new();
    if k > 0 {
        for subset in Combinations::new(verts.len(), k) {
            let base = &verts[subset[0]];
            let mut rows: Vec<RatVector> = subset[1..]
                .iter()
                .map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            rows.extend(lineality.iter().map(|l| rat(l)));
            let m = RatMatrix::from_rows(n, &rows)?;
            let AffineSolution::Consistent { homogeneous, .. } =
                solve_affine(&m, &vec![Rational::zero(); rows.len()])?
            else {
                continue;
            };
            if homogeneous.len() != 1 {
                continue;
            }
            let a = &homogeneous[0];
            let level = dot(a, base);
            let side: Vec<Rational> = verts.iter().map(|q| dot(a, q) - &level).collect();
            let sign = if side.iter().all(|s| !s.is_positive()) {
                1
            } else if side.iter().all(|s| !s.is_negative()) {
                -1
            } else {
                continue;
            };
            let mut normal = primitive_from_rational(a);
            if sign < 0 {
                normal = normal.iter().map(|x| -x).collect();
            }
            let on: Vec<usize> = (0..verts.len()).filter(|&i| side[i].is_zero()).collect();
            facets.entry(normal).or_insert(on);
        }
    }

    Ok(facets)
}

/// Same search for a full-dimensional polytope, done in `i128` after clearing
/// denominators. The normal through `n` vertices is the generalized cross
/// product of the `n-1` difference vectors. Returns `None` on overflow.
fn facets_small_integer(verts: &[RatVector], n: usize) -> Option<Facets> {
    let lcm = verts.iter().flatten().fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let points: Vec<Vec<i128>> = verts
        .iter()
        .map(|v| v.iter().map(|x| (x.numer() * (&lcm / x.denom())).to_i128()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let mut facets = Facets::new();
    for subset in Combinations::new(points.len(), n) {
        let base = &points[subset[0]];
        let mut diffs = Vec::with_capacity(n - 1);
        for &i in &subset[1..] {
            diffs.push(points[i].iter().zip(base).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<i128>>>()?);
        }
        let normal = cross_product(&diffs, n)?;
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let mut side = Vec::with_capacity(points.len());
        for q in &points {
            let mut acc = 0i128;
            for j in 0..n {
                acc = acc.checked_add(normal[j].checked_mul(q[j].checked_sub(base[j])?)?)?;
            }
            side.push(acc.signum());
        }
        let sign = if side.iter().all(|&s| s <= 0) {
            1
        } else if side.iter().all(|&s| s >= 0) {
            -1
        } else {
            continue;
        };
        let g = normal.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
        let normal: Vec<BigInt> = normal.iter().map(|&x| BigInt::from(sign * x / g)).collect();
        let on: Vec<usize> = (0..points.len()).filter(|&i| side[i] == 0).collect();
        facets.entry(normal).or_insert(on);
    }
    Some(facets)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `a_j = (-1)^j det(rows without column j)`, orthogonal to every row.
fn cross_product(rows: &[Vec<i128>], n: usize) -> Option<Vec<i128>> {
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let d = bareiss(minor)?;
            Some(if j % 2 == 0 { d } else { -d })
        })
        .collect()
}

/// Fraction-free determinant with checked arithmetic.
fn bareiss(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let m = a.len();
    if m == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..m).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let x = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = x / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[m - 1][m - 1])
}

/// Outcome of [`fans_equal`], with the first difference found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanComparison {
    pub equal: bool,
    pub mismatch: Option<String>,
}

/// Compares ray sets, then maximal cones as sets of rays.
pub fn fans_equal(a: &Fan, b: &Fan) -> FanComparison {
    let differ = |msg: String| FanComparison { equal: false, mismatch: Some(msg) };
    if a.ambient_dim != b.ambient_dim {
        return differ(format!("ambient dimensions {} and {}", a.ambient_dim, b.ambient_dim));
    }
    let ra: BTreeSet<&Vec<BigInt>> = a.rays.iter().collect();
    let rb: BTreeSet<&Vec<BigInt>> = b.rays.iter().collect();
    if let Some(r) = ra.symmetric_difference(&rb).next() {
        return differ(format!("ray {r:?} is in only one fan"));
    }
    let ca: BTreeSet<Cone> = a.maximal_cones().into_iter().collect();
    let cb: BTreeSet<Cone> = b.maximal_cones().into_iter().collect();
    if let Some(c) = ca.symmetric_difference(&cb).next() {
        return differ(format!("cone {:?} is in only one fan", c.rays()));
    }
    FanComparison { equal: true, mismatch: None }
}
