//! Heuristic search inside action subspaces.

mod astar;
mod cost;
mod ff;

pub use astar::{astar_subspace, astar_subspace_observed, FoundPlan, LocalResult};
pub use cost::{update_global_bound, Cost, SharedBound};
pub use ff::{ff_heuristic, FfHeuristic};
