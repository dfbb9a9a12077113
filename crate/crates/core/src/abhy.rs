//! The ABHY slice `E_c ∩ ℝ^v_{≥0} = U_c`, its projection `A_c`, the kernel
//! matrix `K` of `B^univ`, and the reduced moment image of the torus patch
//! `(ℂ^*)^n × ℂ^v` at level `ĉ`.
//!
//! Coordinates: `u_1..u_n` for the torus factor, `w_1..w_v` for the
//! coefficient factor, one `w_i` per cluster variable of the dual algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{left_kernel_basis, rank, IntMatrix, RatVector, Rational};
use crate::polytope::{
    fans_equal, g_vector_fan, outer_normal_fan, project, vertices_of_slice, Fan, HSlice, VPolytope,
};
use crate::universal::{mesh_relations, positive_mesh_partner, universal_extension, UniversalMatrix};

/// One linear equation `Σ coeff·var = rhs`, with a label for its right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquation {
    pub coefficients: Vec<BigInt>,
    pub rhs: Rational,
    /// Variable names, same length as `coefficients`.
    pub names: Vec<String>,
    /// Symbolic name of the right-hand side, e.g. `c3`.
    pub rhs_name: String,
}

impl LinearEquation {
    /// Renders as `w1 - w2 + w3 = c3`; zero terms are omitted.
    pub fn symbolic(&self) -> String {
        format!("{} = {}", self.lhs(), self.rhs_name)
    }

    fn lhs(&self) -> String {
        let mut out = String::new();
        for (c, name) in self.coefficients.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs(), self.rhs)
    }
}

fn w_names(v: usize) -> Vec<String> {
    (1..=v).map(|i| format!("w{i}")).collect()
}

/// The hyperplanes cutting out `U_c`, one per non-initial dual cluster variable.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    universal: UniversalMatrix,
    c: RatVector,
    equations: Vec<LinearEquation>,
    slice: HSlice,
}

impl SliceSpec {
    /// `c` has one entry per non-initial variable (`c_{n+1}..c_v`) and must be
    /// positive.
    pub fn new(universal: &UniversalMatrix, c: &[Rational]) -> Result<Self> {
        if c.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidInput("every c_i must be positive".into()));
        }
        Self::degenerate(universal, c)
    }

    /// As [`SliceSpec::new`] but allows zero entries, which give degenerate
    /// associahedra such as `A_{e_i}`.
    pub fn degenerate(universal: &UniversalMatrix, c: &[Rational]) -> Result<Self> {
        let (n, v) = (universal.n(), universal.v());
        if c.len() != v - n {
            return Err(Error::DimensionMismatch(format!("expected {} entries of c, got {}", v - n, c.len())));
        }
        if c.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput("c must be nonnegative".into()));
        }
        let atlas = universal.dual_atlas();
        let mut equations = Vec::with_capacity(v - n);
        for i in n..v {
            let (j, witness) = positive_mesh_partner(atlas, i)?;
            let rec = &atlas.clusters()[witness];
            let mut coefficients = vec![BigInt::zero(); v];
            coefficients[j] += 1;
            coefficients[i] += 1;
            for &k in rec.members.iter().filter(|&&k| k != i) {
                coefficients[k] -= rec.b(k, i).expect("member");
            }
            equations.push(LinearEquation {
                coefficients,
                rhs: c[i - n].clone(),
                names: w_names(v),
                rhs_name: format!("c{}", i + 1),
            });
        }
        let slice = HSlice::new(
            v,
            equations
                .iter()
                .map(|e| (e.coefficients.iter().map(|x| Rational::from_integer(x.clone())).collect(), e.rhs.clone()))
                .collect(),
            true,
        )?;
        Ok(SliceSpec { universal: universal.clone(), c: c.to_vec(), equations, slice })
    }

    pub fn universal(&self) -> &UniversalMatrix {
        &self.universal
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn equations(&self) -> &[LinearEquation] {
        &self.equations
    }

    pub fn slice(&self) -> &HSlice {
        &self.slice
    }
}

/// Builds the universal extension of `b` and the slice for `c`.
pub fn build_slice(b: &IntMatrix, c: &[Rational], cap: usize) -> Result<SliceSpec> {
    SliceSpec::new(&universal_extension(b, cap)?, c)
}

pub fn u_polytope(spec: &SliceSpec) -> Result<VPolytope> {
    vertices_of_slice(&spec.slice)
}

/// `A_c`: projection of `U_c` onto `coords`, by default the initial coordinates `w_1..w_n`.
pub fn a_polytope(spec: &SliceSpec, coords: Option<&[usize]>) -> Result<VPolytope> {
    let default: Vec<usize> = (0..spec.universal.n()).collect();
    project(&u_polytope(spec)?, coords.unwrap_or(&default))
}

/// The degenerate associahedron `A_{e_i}` for a non-initial dual variable `i`
/// (0-based, `n ≤ i < v`).
pub fn unit_associahedron(universal: &UniversalMatrix, i: usize) -> Result<VPolytope> {
    let (n, v) = (universal.n(), universal.v());
    if i < n || i >= v {
        return Err(Error::IndexOutOfRange { index: i, n: v });
    }
    let mut c = vec![Rational::zero(); v - n];
    c[i - n] = Rational::one();
    a_polytope(&SliceSpec::degenerate(universal, &c)?, None)
}

/// A `v×(n+v)` basis of the left kernel of `B^univ` in the shape
/// `[I_n | X ; 0 | mesh relations]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    k: IntMatrix,
    n: usize,
}

impl KernelBasis {
    pub fn matrix(&self) -> &IntMatrix {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> usize {
        self.k.rows()
    }

    /// True when the torus block is `[I_n ; 0]`.
    pub fn is_normalized(&self) -> bool {
        let u = self.k.col_block(0..self.n);
        u.row_block(0..self.n) == IntMatrix::identity(self.n) && u.row_block(self.n..self.v()).is_zero()
    }
}

/// The kernel matrix in normalized shape.
///
/// Row `i ≤ n` is `e_i ⊕ x_i` with `(row i of B) + x_i·G = 0`; since the first
/// `n` coefficient rows are the identity, `x_i = -(row i of B)` on those
/// coordinates. The remaining rows are the mesh relations.
pub fn kernel_matrix(universal: &UniversalMatrix) -> Result<KernelBasis> {
    let (n, v) = (universal.n(), universal.v());
    let b = universal.base();
    let mut k = IntMatrix::zeros(v, n + v);
    for i in 0..n {
        k[(i, i)] = BigInt::one();
        for j in 0..n {
            k[(i, n + j)] = -b[(i, j)].clone();
        }
    }
    for (r, rel) in mesh_relations(universal.dual_atlas())?.iter().enumerate() {
        for (j, &x) in rel.coefficients.iter().enumerate() {
            k[(n + r, n + j)] = BigInt::from(x);
        }
    }
    if !k.mul(universal.full().matrix())?.is_zero() {
        return Err(Error::Invariant("K·B^univ is not zero".into()));
    }
    if rank(&k) != v {
        return Err(Error::Invariant("kernel matrix does not have full rank".into()));
    }
    Ok(KernelBasis { k, n })
}

/// A level `ĉ ∈ ℝ^n × ℝ^{v-n}_{>0}` for the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionLevel {
    c_hat: RatVector,
    n: usize,
}

impl ReductionLevel {
    pub fn new(c_hat: RatVector, n: usize) -> Result<Self> {
        if c_hat.len() < n {
            return Err(Error::DimensionMismatch("ĉ is shorter than the rank".into()));
        }
        if c_hat[n..].iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidInput("the last v-n entries of ĉ must be positive".into()));
        }
        Ok(ReductionLevel { c_hat, n })
    }

    /// First `n` entries zero, the rest one.
    pub fn default_for(n: usize, v: usize) -> Self {
        let c_hat = (0..v).map(|i| if i < n { Rational::zero() } else { Rational::one() }).collect();
        ReductionLevel { c_hat, n }
    }

    pub fn values(&self) -> &[Rational] {
        &self.c_hat
    }

    /// The entries `c_{n+1}..c_v` that parametrize `U_c`.
    pub fn c(&self) -> &[Rational] {
        &self.c_hat[self.n..]
    }
}

/// The equations `K·(u, w) = ĉ` before the torus coordinates are eliminated.
pub fn moment_equations(kernel: &KernelBasis, level: &ReductionLevel) -> Result<Vec<LinearEquation>> {
    let (n, v) = (kernel.n, kernel.v());
    if level.c_hat.len() != v {
        return Err(Error::DimensionMismatch(format!("ĉ has {} entries, expected {v}", level.c_hat.len())));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).chain(w_names(v)).collect();
    Ok((0..v)
        .map(|r| LinearEquation {
            coefficients: kernel.k.row(r).to_vec(),
            rhs: level.c_hat[r].clone(),
            names: names.clone(),
            rhs_name: format!("c{}", r + 1),
        })
        .collect())
}

/// Eliminates the unconstrained torus coordinates `u` from `K·(u, w) = ĉ`.
///
/// Works for any kernel basis: the `w`-equations are the combinations of rows
/// that annihilate the `u`-block. For the normalized basis these are exactly
/// the last `v-n` rows.
pub fn eliminate_torus(kernel: &KernelBasis, level: &ReductionLevel) -> Result<HSlice> {
    let (n, v) = (kernel.n, kernel.v());
    if level.c_hat.len() != v {
        return Err(Error::DimensionMismatch(format!("ĉ has {} entries, expected {v}", level.c_hat.len())));
    }
    let combos = left_kernel_basis(&kernel.k.col_block(0..n));
    let kw = kernel.k.col_block(n..n + v);
    let mut equations = Vec::with_capacity(combos.rows());
    for r in 0..combos.rows() {
        let lambda = combos.row(r);
        let coeffs = kw.left_mul_vec(lambda)?;
        let rhs = lambda
            .iter()
            .zip(&level.c_hat)
            .fold(Rational::zero(), |acc, (l, c)| acc + Rational::from_integer(l.clone()) * c);
        equations.push((coeffs.into_iter().map(Rational::from_integer).collect(), rhs));
    }
    HSlice::new(v, equations, true)
}

/// Moment image of the reduced space, as a polytope in `w`-coordinates.
pub fn reduced_moment_image(kernel: &KernelBasis, level: &ReductionLevel) -> Result<VPolytope> {
    vertices_of_slice(&eliminate_torus(kernel, level)?)
}

/// Reference fan for `A_c`: the g-vector fan of the dual algebra with every
/// ray negated (outer normals of `A_c` point against the initial g-vectors).
pub fn associahedron_fan(universal: &UniversalMatrix) -> Result<Fan> {
    Ok(g_vector_fan(universal.dual_atlas())?.negated())
}

/// Outcome of comparing the reduced moment image with `U_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub moment_image: VPolytope,
    pub u_polytope: VPolytope,
    pub vertices_match: bool,
    pub fan_match: bool,
    pub fan_mismatch: Option<String>,
    pub projection_injective: bool,
}

/// Computes the reduced moment image and `U_c` along independent routes and
/// compares them, then compares the normal fan of `A_c` with the g-vector fan.
pub fn verify_theorem(b: &IntMatrix, c_hat: &[Rational], cap: usize) -> Result<TheoremReport> {
    let universal = universal_extension(b, cap)?;
    let level = ReductionLevel::new(c_hat.to_vec(), universal.n())?;
    if c_hat.len() != universal.v() {
        return Err(Error::DimensionMismatch(format!(
            "ĉ has {} entries, expected {}",
            c_hat.len(),
            universal.v()
        )));
    }
    let kernel = kernel_matrix(&universal)?;
    let moment_image = reduced_moment_image(&kernel, &level)?;
    let spec = SliceSpec::new(&universal, level.c())?;
    let u = u_polytope(&spec)?;
    let coords: Vec<usize> = (0..universal.n()).collect();
    let a = project(&u, &coords)?;
    let cmp = fans_equal(&outer_normal_fan(&a)?.fan, &associahedron_fan(&universal)?);
    Ok(TheoremReport {
        vertices_match: moment_image == u,
        projection_injective: crate::polytope::projection_is_injective(&u, &coords),
        moment_image,
        u_polytope: u,
        fan_match: cmp.equal,
        fan_mismatch: cmp.mismatch,
    })
}

/// A point of `(ℂ^*)^n × ℂ^v` in polar coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPoint {
    pub n: usize,
    pub moduli: Vec<f64>,
    pub angles: Vec<f64>,
}

/// `(-log r_1, …, -log r_n, r_{n+1}²/2, …, r_{n+v}²/2)` in floating point.
/// For sanity checks only; nothing exact depends on it.
pub fn moment_map_eval(p: &MomentPoint) -> Result<Vec<f64>> {
    if p.moduli.len() != p.angles.len() || p.n > p.moduli.len() {
        return Err(Error::DimensionMismatch("moduli and angles disagree".into()));
    }
    if p.moduli[..p.n].iter().any(|&r| r.is_nan() || r <= 0.0) {
        return Err(Error::InvalidInput("torus moduli must be positive".into()));
    }
    if p.moduli[p.n..].iter().any(|&r| r.is_nan() || r < 0.0) {
        return Err(Error::InvalidInput("moduli must be nonnegative".into()));
    }
    Ok(p.moduli
        .iter()
        .enumerate()
        .map(|(j, &r)| if j < p.n { -r.ln() } else { 0.5 * r * r })
        .collect())
}

/// `K·x` in floating point.
pub fn apply_kernel_f64(kernel: &KernelBasis, x: &[f64]) -> Vec<f64> {
    (0..kernel.v())
        .map(|r| {
            kernel.k.row(r).iter().zip(x).map(|(k, xi)| k.to_f64().unwrap_or(f64::NAN) * xi).sum()
        })
        .collect()
}
