//! Star instances, orderings, flips, metrics and rooted trees.

pub mod metrics;
pub mod star;
pub mod tree;

pub use metrics::{
    angle_sequence, compute_metrics, std_dev_from_sop, std_dev_of, sum_of_products, Guarantee,
    MetricsReport, Solution,
};
pub use star::{Case, CircularOrdering, FlipAssignment, Problem, StarInstance, SubWedgePair};
pub use tree::{RootedTree, TreeNode};
