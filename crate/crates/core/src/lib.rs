//! Exact computations for finite-type cluster algebras: mutation and exchange
//! graphs, g-vectors and F-polynomials, universal coefficients, the ABHY
//! associahedra `U_c` and `A_c`, and the moment-map slice that reproduces
//! `U_c` by symplectic reduction.

pub mod abhy;
pub mod cluster;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod laurent;
pub mod polytope;
pub mod universal;

pub use abhy::{
    a_polytope, associahedron_fan, unit_associahedron, build_slice, eliminate_torus, kernel_matrix, moment_equations,
    moment_map_eval, LinearEquation,
    reduced_moment_image, u_polytope, verify_theorem, KernelBasis, MomentPoint, ReductionLevel,
    SliceSpec, TheoremReport,
};
pub use cluster::{
    explore, explore_with, f_polynomial, g_vector, is_skew_symmetrizable, mutate_matrix,
    mutate_seed, principal_extension, Atlas, ExchangeMatrix, ExploreOrder, GVector, Seed,
    DEFAULT_CAP,
};
pub use error::{Error, Result};
pub use exact::{IntMatrix, RatMatrix, RatVector, Rational};
pub use laurent::LaurentPoly;
pub use polytope::{
    fans_equal, g_vector_fan, minkowski_sum, newton_polytope, outer_normal_fan, project,
    vertices_of_slice, Fan, FanComparison, HSlice, NormalFan, VPolytope,
};
pub use universal::{
    check_univ_compatibility, dual_matrix, mesh_relations, positive_mesh_partner,
    universal_extension, CompatibilityReport, MeshRelation, UniversalMatrix,
};
