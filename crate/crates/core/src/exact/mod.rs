//! Polynomial exact solvers.

pub mod cycle_merge;
pub mod de1;
pub mod flips;

pub use cycle_merge::{merge_cycles, solve_re3_re4};
pub use de1::solve_de1;
pub use flips::{solve_de2, solve_ra2, solve_re2};
