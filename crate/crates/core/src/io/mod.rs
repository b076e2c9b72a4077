//! File formats: trees, star instances, SVG drawings and reports.

pub mod report;
pub mod star;
pub mod svg;
pub mod tree;
pub mod verify;

pub use report::{
    emit_layout_report, emit_report, parse_report, round12, LayoutRecord, ReportRecord,
};
pub use star::{
    de4_document, parse_star, parse_star_document, ra4_document, serialize_star, ChildDocument,
    StarDocument, Units,
};
pub use svg::{emit_svg, SvgOptions};
pub use tree::{parse_tree, serialize_compact, serialize_json, NodeDocument, TreeDocument};
pub use verify::{verify_star, verify_tree, FieldDiff, VerifyReport, VERIFY_TOLERANCE};
