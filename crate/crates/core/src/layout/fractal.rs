//! Layout in which every edge into depth `d` has length `root_radius · γ^d`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{Drawing, LayoutNode, Point};
use crate::error::{Error, Result};
use crate::model::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractalParams {
    /// Ratio between the edge lengths of consecutive depths, in `(0, 1)`.
    pub gamma: f64,
    pub root_radius: f64,
}

impl Default for FractalParams {
    fn default() -> Self {
        FractalParams {
            gamma: 0.5,
            root_radius: 1.0,
        }
    }
}

impl FractalParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::invalid(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        if !(self.root_radius > 0.0 && self.root_radius.is_finite()) {
            return Err(Error::invalid("root radius must be positive and finite"));
        }
        Ok(())
    }
}

/// Children of the root at angles `2πj/k`; children of another node at
/// `α + 2π(j+1)/(k+1)` where `α` points back to its parent, so the parent
/// edge takes one of `k + 1` even slots.
pub fn fractal_layout(tree: &RootedTree, params: &FractalParams) -> Result<Drawing> {
    params.validate()?;
    let depths = tree.depths();
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    // Lengths per depth, computed once so equal depths give identical values.
    let mut length = vec![0.0; max_depth + 2];
    let mut l = params.root_radius;
    for slot in length.iter_mut().skip(1) {
        l *= params.gamma;
        *slot = l;
    }
    let reach = |d: usize| length[(d + 1).min(max_depth + 1)] / (1.0 - params.gamma);
    let n = tree.len();
    let mut nodes = vec![LayoutNode::default(); n];
    let mut back = vec![0.0; n];
    let root = tree.root();
    nodes[root] = LayoutNode {
        position: Point::default(),
        inner_radius: length[1],
        outer_radius: reach(0),
        wedge: (0.0, TAU),
        depth: 0,
        edge_length: 0.0,
    };
    for v in tree.preorder() {
        let kids = tree.children(v);
        let k = kids.len();
        let d = depths[v];
        let p = nodes[v].position;
        for (j, &c) in kids.iter().enumerate() {
            let (angle, half) = if v == root {
                (TAU * j as f64 / k as f64, TAU / (2.0 * k as f64))
            } else {
                (
                    back[v] + TAU * (j + 1) as f64 / (k + 1) as f64,
                    TAU / (2.0 * (k + 1) as f64),
                )
            };
            let len = length[d + 1];
            let position = Point {
                x: p.x + len * angle.cos(),
                y: p.y + len * angle.sin(),
            };
            back[c] = angle + TAU / 2.0;
            nodes[c] = LayoutNode {
                position,
                inner_radius: length[(d + 2).min(max_depth + 1)],
                outer_radius: reach(d + 1),
                wedge: (angle - half, angle + half),
                depth: d + 1,
                edge_length: len,
            };
        }
    }
    Ok(Drawing { nodes })
}
