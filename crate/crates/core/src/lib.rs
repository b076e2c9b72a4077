//! Balloon drawings of rooted trees and the optimization of their angles.
//!
//! Every internal node of a balloon drawing is a star: its children sit on a
//! circle and each child's subtree occupies a wedge that the edge to the
//! child splits into two sub-wedges. The angles between consecutive edges
//! depend on the circular order of the children and on which sub-wedge of
//! each child comes first. This crate computes those drawings, measures
//! them (smallest angle, aspect ratio, standard deviation, sum of products)
//! and optimizes the measures with exact, approximate and exhaustive
//! solvers.

pub mod approx;
pub mod bipartite;
pub mod error;
pub mod exact;
pub mod gadgets;
pub mod io;
pub mod layout;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod solve;

pub use error::{Error, Result};
pub use model::{
    angle_sequence, compute_metrics, Case, CircularOrdering, FlipAssignment, Guarantee,
    MetricsReport, Problem, RootedTree, Solution, StarInstance, SubWedgePair,
};
pub use scalar::{RealWeight, Weight};

/// Star with radian (or abstract real) sub-wedges.
pub type Star = StarInstance<f64>;
/// Single-precision star.
pub type Star32 = StarInstance<f32>;
/// Star with exact integer sub-wedges.
pub type IntStar = StarInstance<i64>;
/// Star with exact rational sub-wedges.
pub type RatioStar = StarInstance<num_rational::Ratio<i64>>;
pub type StarSolution = Solution<f64>;
pub type IntSolution = Solution<i64>;
