//! Universal coefficients, positive mesh mutations and mesh relations.
//!
//! Throughout, the dual of `B` is its transpose. The coefficient rows of
//! `B^univ` are the g-vectors of the cluster algebra of the dual matrix, in
//! the numbering of its atlas.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::cluster::{
    explore, g_vectors, mutate_matrix, principal_extension, Atlas, ExchangeMatrix, GVector,
};
use crate::error::{Error, Result};
use crate::exact::{rank, IntMatrix};

pub fn dual_matrix(b: &IntMatrix) -> IntMatrix {
    b.transpose()
}

/// `B` extended by the g-vectors of the dual cluster algebra.
#[derive(Clone, Debug)]
pub struct UniversalMatrix {
    base: IntMatrix,
    rows: Vec<GVector>,
    full: ExchangeMatrix,
    dual_atlas: Atlas,
}

impl UniversalMatrix {
    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.rows()
    }

    /// Number of cluster variables.
    pub fn v(&self) -> usize {
        self.rows.len()
    }

    /// Coefficient rows `g_1..g_v` of the dual algebra.
    pub fn coefficient_rows(&self) -> &[GVector] {
        &self.rows
    }

    pub fn full(&self) -> &ExchangeMatrix {
        &self.full
    }

    /// Atlas of the dual matrix with principal coefficients.
    pub fn dual_atlas(&self) -> &Atlas {
        &self.dual_atlas
    }

    /// The `v×n` matrix whose rows are the coefficient rows.
    pub fn g_matrix(&self) -> IntMatrix {
        g_matrix(&self.rows, self.n())
    }
}

fn g_matrix(rows: &[GVector], n: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> =
        rows.iter().map(|g| g.0.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_rows(n, &rows).expect("g-vectors have length n")
}

/// Atlas of `(dual B)^prin`.
pub fn dual_atlas(b: &IntMatrix, cap: usize) -> Result<Atlas> {
    explore(&principal_extension(&dual_matrix(b))?, cap)
}

pub fn universal_extension(b: &IntMatrix, cap: usize) -> Result<UniversalMatrix> {
    let atlas = dual_atlas(b, cap)?;
    let rows = g_vectors(&atlas)?;
    let n = b.rows();
    for (i, g) in rows.iter().take(n).enumerate() {
        if g.0.iter().enumerate().any(|(k, &x)| x != i64::from(k == i)) {
            return Err(Error::Invariant(format!("initial g-vector {i} is {:?}", g.0)));
        }
    }
    let full = ExchangeMatrix::new(b.vstack(&g_matrix(&rows, n))?)?;
    Ok(UniversalMatrix { base: b.clone(), rows, full, dual_atlas: atlas })
}

/// Result of comparing `μ_w(B^univ)` with `μ_w(B)^univ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// 0-based mutation word.
    pub word: Vec<usize>,
    /// Coefficient rows of `μ_w(B^univ)`.
    pub mutated_rows: Vec<Vec<i64>>,
    /// g-vectors of the dual algebra recomputed from the mutated seed, listed
    /// in the numbering of the original dual atlas.
    pub recomputed_rows: Vec<Vec<i64>>,
    /// Row-by-row agreement under the variable bijection.
    pub agree: bool,
}

/// Checks `μ_w(B^univ) = μ_w(B)^univ` for the word `w` (0-based directions).
///
/// Each dual cluster variable is followed to the mutated seed by replaying
/// mutation words in the original dual atlas, which gives the bijection
/// between coefficient rows and recomputed g-vectors.
pub fn check_univ_compatibility(b: &IntMatrix, word: &[usize], cap: usize) -> Result<CompatibilityReport> {
    let univ = universal_extension(b, cap)?;
    let n = univ.n();
    let mut mutated = univ.full.clone();
    for &k in word {
        mutated = mutate_matrix(&mutated, k)?;
    }
    let mutated_rows = mutated.frozen_rows().to_i64_rows();

    let new_base = mutated.principal_part();
    let new_atlas = dual_atlas(&new_base, cap)?;
    let new_g = g_vectors(&new_atlas)?;
    if new_atlas.num_variables() != univ.v() {
        return Err(Error::Invariant("variable counts differ after mutation".into()));
    }
    let mut recomputed_rows = vec![Vec::new(); univ.v()];
    for rec in new_atlas.clusters() {
        let mut full_word = word.to_vec();
        full_word.extend(&rec.word);
        let labels = univ.dual_atlas.follow(&full_word)?;
        for (p, &var) in rec.labels.iter().enumerate() {
            recomputed_rows[labels[p]] = new_g[var].0.clone();
        }
    }
    if recomputed_rows.iter().any(Vec::is_empty) || n == 0 {
        return Err(Error::Invariant("variable bijection is not onto".into()));
    }
    let agree = recomputed_rows == mutated_rows;
    Ok(CompatibilityReport { word: word.to_vec(), mutated_rows, recomputed_rows, agree })
}

/// Every cluster witnessing a positive mesh mutation of variable `i`, with the partner it yields.
pub fn positive_mesh_witnesses(atlas: &Atlas, i: usize) -> Vec<(usize, usize)> {
    atlas
        .clusters()
        .iter()
        .enumerate()
        .filter_map(|(c, rec)| {
            let p = rec.position(i)?;
            let column_nonnegative = (0..rec.members.len()).all(|a| !rec.matrix[(a, p)].is_negative());
            column_nonnegative.then(|| (rec.exchanges[p].0, c))
        })
        .collect()
}

/// Positive mesh partner `j` of variable `i` and the first witness cluster in atlas order.
pub fn positive_mesh_partner(atlas: &Atlas, i: usize) -> Result<(usize, usize)> {
    if i >= atlas.num_variables() {
        return Err(Error::IndexOutOfRange { index: i, n: atlas.num_variables() });
    }
    positive_mesh_witnesses(atlas, i)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant(format!("variable {i} has no positive mesh mutation")))
}

/// A linear relation `g_i + g_j - Σ_{k∈C∖i} B(C)_{ki} g_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshRelation {
    pub index: usize,
    pub partner: usize,
    pub cluster: usize,
    /// Coefficient of each `g_1..g_v`.
    pub coefficients: Vec<i64>,
}

fn relation(atlas: &Atlas, i: usize) -> Result<MeshRelation> {
    let (j, c) = positive_mesh_partner(atlas, i)?;
    let rec = &atlas.clusters()[c];
    let mut coefficients = vec![0i64; atlas.num_variables()];
    coefficients[i] += 1;
    coefficients[j] += 1;
    for &k in rec.members.iter().filter(|&&k| k != i) {
        let b = rec.b(k, i).expect("member").to_i64().expect("small entry");
        coefficients[k] -= b;
    }
    Ok(MeshRelation { index: i, partner: j, cluster: c, coefficients })
}

/// The `v-n` mesh relations among the g-vectors of a principal-coefficient atlas.
///
/// Each relation is checked to annihilate the g-vector matrix, and together
/// they must span the full space of linear dependencies.
pub fn mesh_relations(atlas: &Atlas) -> Result<Vec<MeshRelation>> {
    let n = atlas.rank();
    let v = atlas.num_variables();
    let g = g_matrix(&g_vectors(atlas)?, n);
    let relations: Vec<MeshRelation> = (n..v).map(|i| relation(atlas, i)).collect::<Result<_>>()?;
    let r = relation_matrix(&relations, v);
    if !r.mul(&g)?.is_zero() {
        return Err(Error::Invariant("a mesh relation does not annihilate the g-vectors".into()));
    }
    if rank(&r) != v - n || rank(&g) != n {
        return Err(Error::Invariant("mesh relations do not span the dependencies".into()));
    }
    Ok(relations)
}

/// Mesh relations as the rows of a `(v-n)×v` matrix.
pub fn relation_matrix(relations: &[MeshRelation], v: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| r.coefficients.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    IntMatrix::from_rows(v, &rows).expect("relations have length v")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::DEFAULT_CAP;

    fn b2() -> IntMatrix {
        IntMatrix::from_i64(&[&[0, -1], &[2, 0]])
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_matrix(&b2()), IntMatrix::from_i64(&[&[0, 2], &[-1, 0]]));
        let s = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(dual_matrix(&s), s.map(|x| -x));
        assert_eq!(dual_matrix(&dual_matrix(&b2())), b2());
    }

    #[test]
    fn a1_universal_rows() {
        let u = universal_extension(&IntMatrix::from_i64(&[&[0]]), DEFAULT_CAP).unwrap();
        assert_eq!(u.coefficient_rows(), &[GVector(vec![1]), GVector(vec![-1])]);
    }

    #[test]
    fn a1_partner_and_relation() {
        let u = universal_extension(&IntMatrix::from_i64(&[&[0]]), DEFAULT_CAP).unwrap();
        assert_eq!(positive_mesh_partner(u.dual_atlas(), 1).unwrap().0, 0);
        let rels = mesh_relations(u.dual_atlas()).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].coefficients, vec![1, 1]);
    }

    #[test]
    fn empty_word_is_trivially_compatible() {
        let r = check_univ_compatibility(&b2(), &[], DEFAULT_CAP).unwrap();
        assert!(r.agree);
    }

    #[test]
    fn partner_out_of_range() {
        let u = universal_extension(&b2(), DEFAULT_CAP).unwrap();
        assert!(positive_mesh_partner(u.dual_atlas(), 6).is_err());
    }
}
