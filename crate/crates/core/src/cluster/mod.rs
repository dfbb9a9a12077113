//! Seeds, mutation and exchange graphs of finite-type cluster algebras.
//!
//! Directions and variable indices are 0-based throughout the library; the
//! command line and variable names (`x1`, `y2`, ...) are 1-based.

mod atlas;
mod grading;
mod matrix;
mod seed;

pub use atlas::{explore, explore_with, Atlas, ClusterRecord, ExploreOrder, DEFAULT_CAP};
pub use grading::{f_polynomial, f_polynomials, g_vector, g_vectors, principal_grading, GVector};
pub use matrix::{is_skew_symmetrizable, mutate_matrix, principal_extension, ExchangeMatrix};
pub use seed::{initial_names, mutate_seed, Seed};
