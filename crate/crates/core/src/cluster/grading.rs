use num_traits::{One, ToPrimitive};

use super::atlas::Atlas;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Degree of a cluster variable under the principal-coefficient grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVector(pub Vec<i64>);

impl GVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

fn require_principal(atlas: &Atlas) -> Result<()> {
    if !atlas.base().is_principal() {
        return Err(Error::InvalidInput("atlas must be built over principal coefficients".into()));
    }
    Ok(())
}

fn variable(atlas: &Atlas, index: usize) -> Result<&LaurentPoly> {
    atlas
        .variables()
        .get(index)
        .ok_or(Error::IndexOutOfRange { index, n: atlas.num_variables() })
}

/// The grading `deg x_i = e_i`, `deg y_j = -(column j of B)`.
pub fn principal_grading(atlas: &Atlas) -> Vec<Vec<i64>> {
    let n = atlas.rank();
    let b = atlas.base().principal_part();
    let mut grading = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        grading.push(e);
    }
    for j in 0..n {
        grading.push((0..n).map(|i| -b[(i, j)].to_i64().expect("small entry")).collect());
    }
    grading
}

/// g-vector of the variable with (0-based) `index`; fails if it is not homogeneous.
pub fn g_vector(atlas: &Atlas, index: usize) -> Result<GVector> {
    require_principal(atlas)?;
    let z = variable(atlas, index)?;
    z.homogeneous_degree(&principal_grading(atlas))
        .map(GVector)
        .ok_or_else(|| Error::Invariant(format!("variable {index} is not homogeneous: {z}")))
}

/// All g-vectors, checked to be pairwise distinct.
pub fn g_vectors(atlas: &Atlas) -> Result<Vec<GVector>> {
    let gs: Vec<GVector> = (0..atlas.num_variables()).map(|i| g_vector(atlas, i)).collect::<Result<_>>()?;
    let unique: std::collections::BTreeSet<&GVector> = gs.iter().collect();
    if unique.len() != gs.len() {
        return Err(Error::Invariant("two cluster variables share a g-vector".into()));
    }
    Ok(gs)
}

/// F-polynomial: the variable with every `x_j` set to 1, as a polynomial in `y1..yn`.
pub fn f_polynomial(atlas: &Atlas, index: usize) -> Result<LaurentPoly> {
    require_principal(atlas)?;
    let z = variable(atlas, index)?;
    let xs: Vec<usize> = (0..atlas.rank()).collect();
    let f = z.specialize_to_one(&xs);
    if !f.is_polynomial() {
        return Err(Error::Invariant(format!("F-polynomial of variable {index} has negative exponents: {f}")));
    }
    if !f.constant_term().is_one() {
        return Err(Error::Invariant(format!("F-polynomial of variable {index} has constant term {}", f.constant_term())));
    }
    Ok(f)
}

pub fn f_polynomials(atlas: &Atlas) -> Result<Vec<LaurentPoly>> {
    (0..atlas.num_variables()).map(|i| f_polynomial(atlas, i)).collect()
}
