//! Exact polytopes: slices of the orthant, vertex sets, projections, Newton
//! polytopes, Minkowski sums and fans.

mod fan;
pub mod lp;
mod slice;
mod vpoly;

pub use fan::{fans_equal, g_vector_fan, outer_normal_fan, Cone, Fan, FanComparison, NormalFan};
pub use slice::{vertices_of_slice, HSlice};
pub use vpoly::{
    in_convex_hull, minkowski_sum, newton_polytope, project, projection_is_injective, VPolytope,
};
