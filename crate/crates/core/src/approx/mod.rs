//! Approximations for the NP-hard unordered cases.

pub mod exchange;
pub mod factor_bound;
pub mod merge;

pub use exchange::{ExchangeEdge, ExchangeGraph, SpanningTree, Witness};
pub use factor_bound::{factor_bound, FactorBound};
pub use merge::{approx_de, approx_ra, approx_sop, MergeOutcome, PairingRule};
