//! Star instance files.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::tree::json_error;
use crate::error::{Error, Result};
use crate::gadgets::{De4Gadget, Ra4Gadget, TwoStationInstance};
use crate::model::{Case, StarInstance, SubWedgePair};
use crate::Star;

/// Whether sub-wedges are radians or dimensionless weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Rad,
    #[default]
    Abstract,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChildDocument {
    pub w0: f64,
    pub w1: f64,
}

/// JSON form of a star instance. `meta` is free-form and kept verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarDocument {
    pub case: Case,
    pub children: Vec<ChildDocument>,
    pub units: Units,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

/// Slack allowed when radian sub-wedges are checked against a full circle.
const CIRCLE_SLACK: f64 = 1e-9;

impl StarDocument {
    pub fn from_star(star: &Star, units: Units, meta: Option<Value>) -> Self {
        StarDocument {
            case: star.case(),
            children: star
                .children()
                .iter()
                .map(|c| ChildDocument { w0: c.w0, w1: c.w1 })
                .collect(),
            units,
            meta,
        }
    }

    /// Validates the values and builds the instance. Sub-wedges must be
    /// finite and nonnegative, even under C1, and at most a full circle in
    /// total when given in radians.
    pub fn to_star(&self) -> Result<Star> {
        for (i, c) in self.children.iter().enumerate() {
            if !(c.w0.is_finite() && c.w1.is_finite()) {
                return Err(Error::invalid(format!(
                    "child {i} has a non-finite sub-wedge"
                )));
            }
        }
        let star = StarInstance::new(
            self.children
                .iter()
                .map(|c| SubWedgePair::new(c.w0, c.w1))
                .collect(),
            self.case,
        )?;
        if self.units == Units::Rad && star.total() > TAU * (1.0 + CIRCLE_SLACK) {
            return Err(Error::invalid(format!(
                "sub-wedges total {} rad, more than a full circle",
                star.total()
            )));
        }
        Ok(star)
    }
}

/// Reads a star document; only the syntax and the schema are checked here.
pub fn parse_star_document(text: &str) -> Result<StarDocument> {
    serde_json::from_str(text).map_err(json_error)
}

/// Reads and validates a star document.
pub fn parse_star(text: &str) -> Result<(Star, StarDocument)> {
    let doc = parse_star_document(text)?;
    Ok((doc.to_star()?, doc))
}

pub fn serialize_star(doc: &StarDocument) -> String {
    serde_json::to_string_pretty(doc).expect("star documents serialize")
}

/// Document for a two-station gadget; `units` is [`Units::Rad`] for the
/// gadget scaled to the circle.
pub fn ra4_document(
    gadget: &Ra4Gadget<f64>,
    source: &TwoStationInstance<f64>,
    units: Units,
) -> StarDocument {
    let meta = json!({
        "gadget": "ra4-from-2slw",
        "source": source,
        "a": gadget.a,
        "b": gadget.b,
        "rho": gadget.rho,
        "w_max": gadget.w_max,
    });
    StarDocument::from_star(&gadget.instance, units, Some(meta))
}

/// Document for a cubic-graph gadget, in abstract integer units.
pub fn de4_document(gadget: &De4Gadget) -> StarDocument {
    let n = gadget.graph.len() as i64;
    let meta = json!({
        "gadget": "de4-from-cubic",
        "source": {"nodes": gadget.graph.len(), "edges": gadget.graph.edges()},
        "ub": gadget.ub,
        "lower_bound": gadget.ub - 7 * n,
        "gap_premise": gadget.gap_premise,
    });
    let star = gadget.instance.map(|w| w as f64);
    StarDocument::from_star(&star, Units::Abstract, Some(meta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_validate_round_trip() {
        let text = r#"{"case": "C4", "children": [{"w0": 1, "w1": 2.5}, {"w0": 0, "w1": 0.25}],
                       "units": "abstract", "meta": {"note": [1, 2]}}"#;
        let (star, doc) = parse_star(text).unwrap();
        assert_eq!(star.len(), 2);
        assert_eq!(star.child(0), SubWedgePair::new(1.0, 2.5));
        assert_eq!(parse_star_document(&serialize_star(&doc)).unwrap(), doc);
    }

    #[test]
    fn schema_and_value_errors() {
        let uneven = r#"{"case": "C1", "children": [{"w0": 1, "w1": 2}], "units": "abstract"}"#;
        assert!(parse_star(uneven).unwrap_err().to_string().contains("even"));
        let wide = r#"{"case": "C4", "children": [{"w0": 4, "w1": 4}], "units": "rad"}"#;
        assert!(parse_star(wide)
            .unwrap_err()
            .to_string()
            .contains("full circle"));
        let negative = r#"{"case": "C3", "children": [{"w0": -1, "w1": 2}], "units": "abstract"}"#;
        assert!(parse_star(negative).is_err());
        for bad in [
            r#"{"case": "C5", "children": [], "units": "rad"}"#,
            r#"{"case": "C4", "children": [{"w0": 1}], "units": "rad"}"#,
            r#"{"case": "C4", "children": [{"w0": 1, "w1": 1}], "units": "deg"}"#,
            r#"{"case": "C4", "children": [{"w0": 1, "w1": 1}], "units": "rad", "extra": 1}"#,
        ] {
            assert!(matches!(parse_star(bad), Err(Error::Parse { .. })), "{bad}");
        }
        let empty = r#"{"case": "C4", "children": [], "units": "rad"}"#;
        assert!(matches!(parse_star(empty), Err(Error::InvalidArguments(_))));
    }
}
