//! Machine-readable reports.
//!
//! Reals are rounded to 12 significant digits, so re-serializing a parsed
//! report reproduces it byte for byte. Keys keep declaration order.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::star::Units;
use super::tree::json_error;
use crate::error::Result;
use crate::layout::Drawing;
use crate::model::{Case, Guarantee, Problem, RootedTree};
use crate::solve::{Solved, SolverChoice};

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted floats parse")
}

/// One optimized star.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRecord {
    /// Input file, set when a run covers several inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    /// Tree node id, or `"star"` for a star input.
    pub node: String,
    pub case: Case,
    pub problem: Problem,
    /// Complexity table row, e.g. `"RA4"`.
    pub row: String,
    pub complexity: String,
    pub solver: String,
    pub used: SolverChoice,
    pub guarantee: Guarantee,
    pub optimal: bool,
    pub ordering: Vec<usize>,
    pub flips: Vec<bool>,
    pub units: Units,
    pub angles: Vec<f64>,
    pub ang_resl: f64,
    /// `None` when some angle is zero.
    pub asp_ratio: Option<f64>,
    pub std_dev: f64,
    pub sop: f64,
    pub wall_time_ms: f64,
}

impl ReportRecord {
    pub fn new(
        node: impl Into<String>,
        case: Case,
        problem: Problem,
        solved: &Solved<f64>,
        units: Units,
        elapsed: Duration,
    ) -> Self {
        let s = &solved.solution;
        let m = &s.metrics;
        ReportRecord {
            source: None,
            node: node.into(),
            case,
            problem,
            row: solved.row.label.to_string(),
            complexity: solved.row.complexity.to_string(),
            solver: s.solver_name.clone(),
            used: solved.used,
            guarantee: s.guarantee,
            optimal: s.guarantee == Guarantee::Optimal,
            ordering: s.ordering.as_slice().to_vec(),
            flips: s.flips.bits().to_vec(),
            units,
            angles: m.angles.iter().map(|&a| round12(a)).collect(),
            ang_resl: round12(m.ang_resl),
            asp_ratio: (!m.asp_ratio_unbounded).then(|| round12(m.asp_ratio)),
            std_dev: round12(m.std_dev),
            sop: round12(m.sop),
            wall_time_ms: round12(elapsed.as_secs_f64() * 1e3),
        }
    }
}

/// Pretty JSON array of records; `"[]"` when there are none.
pub fn emit_report(records: &[ReportRecord]) -> String {
    serde_json::to_string_pretty(records).expect("reports serialize")
}

pub fn parse_report(text: &str) -> Result<Vec<ReportRecord>> {
    serde_json::from_str(text).map_err(json_error)
}

/// Position and radii of one node in a layout report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutRecord {
    pub node: String,
    pub depth: usize,
    pub x: f64,
    pub y: f64,
    pub edge_length: f64,
    pub inner_radius: f64,
    pub outer_radius: f64,
}

/// Layout report: one record per node in preorder.
pub fn emit_layout_report(tree: &RootedTree, drawing: &Drawing) -> String {
    let records: Vec<LayoutRecord> = tree
        .preorder()
        .into_iter()
        .map(|v| {
            let n = &drawing.nodes[v];
            LayoutRecord {
                node: tree.node(v).id.clone(),
                depth: n.depth,
                x: round12(n.position.x),
                y: round12(n.position.y),
                edge_length: round12(n.edge_length),
                inner_radius: round12(n.inner_radius),
                outer_radius: round12(n.outer_radius),
            }
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("reports serialize")
}
