//! Geometric realization of balloon drawings.
//!
//! Angles are radians, counterclockwise from the positive x-axis. The root
//! sits at the origin and its first child (in the solution's ordering) at
//! angle 0. Every other node places the edge to its parent on the boundary
//! between the last child's trailing sub-wedge and the first child's
//! leading one, so the edge stays clear of every child's wedge. A child
//! with a flipped sub-wedge pair draws its own subtree mirrored.

pub mod fractal;
pub mod optimize;
pub mod sns;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{angle_sequence, Case, RootedTree, Solution, StarInstance, SubWedgePair};
use crate::scalar::wmin;

pub use fractal::{fractal_layout, FractalParams};
pub use optimize::{node_star, optimize_tree, NodeResult, TreeOptimization};
pub use sns::{half_width, inner_radius, sns_layout, NodeRadii, SnsLayout, SnsOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A positioned node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LayoutNode {
    pub position: Point,
    /// Distance from the node to its children.
    pub inner_radius: f64,
    /// Radius of a circle around the node containing its subtree.
    pub outer_radius: f64,
    /// Angular range `(start, end)` of the node's wedge as seen from its
    /// parent (`(0, 2π)` for the root).
    pub wedge: (f64, f64),
    pub depth: usize,
    /// Length of the edge from the parent (0 for the root).
    pub edge_length: f64,
}

/// Node positions indexed like the tree's nodes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Drawing {
    pub nodes: Vec<LayoutNode>,
}

/// Caps each sub-wedge of an even star at the required extent.
///
/// `required[i]` holds the `(w0, w1)` extents actually needed by child
/// `i`; the result never exceeds the input and never goes below zero. A
/// C1 star becomes C4 since its sub-wedges may no longer be even.
pub fn shrink_to_uneven(
    star: &StarInstance<f64>,
    required: &[(f64, f64)],
) -> Result<StarInstance<f64>> {
    if required.len() != star.len() {
        return Err(Error::invalid("one requirement per child is needed"));
    }
    let children = star
        .children()
        .iter()
        .zip(required)
        .map(|(c, &(a, b))| SubWedgePair::new(wmin(c.w0, a.max(0.0)), wmin(c.w1, b.max(0.0))))
        .collect();
    let case = if star.case() == Case::C1 {
        Case::C4
    } else {
        star.case()
    };
    StarInstance::new(children, case)
}

/// Angles of a node's star scaled to fill the circle.
fn scaled_angles(star: &StarInstance<f64>, sol: &Solution<f64>) -> Result<(Vec<f64>, f64)> {
    let angles = angle_sequence(star, &sol.ordering, &sol.flips)?;
    let total: f64 = angles.iter().sum();
    let scale = if total > 0.0 { TAU / total } else { 1.0 };
    let k = angles.len() as f64;
    Ok(if total > 0.0 {
        (angles.iter().map(|a| a * scale).collect(), scale)
    } else {
        (vec![TAU / k; angles.len()], scale)
    })
}

/// Local angles of a node's children (index by position in the ordering),
/// in a frame whose parent direction is `π`; `first_lead` is the scaled
/// leading sub-wedge of the first child. For the root the first child sits
/// at 0.
pub(crate) fn local_child_angles(angles: &[f64], first_lead: Option<f64>) -> Vec<f64> {
    let mut phi = first_lead.map_or(0.0, |l| PI + l);
    let mut out = Vec::with_capacity(angles.len());
    for a in angles {
        out.push(phi);
        phi += a;
    }
    out
}

pub(crate) fn first_lead(star: &StarInstance<f64>, sol: &Solution<f64>) -> f64 {
    let first = sol.ordering.at(0);
    star.child(first).side(sol.flips.get(first))
}

/// Places every node from the inner radii and one solution per internal
/// node (the star's child `i` is the tree node's `i`-th child).
pub fn realize(
    tree: &RootedTree,
    stars: &[Option<StarInstance<f64>>],
    radii: &[NodeRadii],
    solutions: &[Option<Solution<f64>>],
) -> Result<Drawing> {
    let n = tree.len();
    if stars.len() != n || radii.len() != n || solutions.len() != n {
        return Err(Error::invalid("per-node inputs must cover every node"));
    }
    let mut nodes = vec![LayoutNode::default(); n];
    // Direction of the local +x axis and orientation (+1 counterclockwise).
    let mut base = vec![0.0; n];
    let mut orient = vec![1.0; n];
    let root = tree.root();
    nodes[root] = LayoutNode {
        position: Point::default(),
        inner_radius: radii[root].inner,
        outer_radius: radii[root].outer,
        wedge: (0.0, TAU),
        depth: 0,
        edge_length: 0.0,
    };
    for v in tree.preorder() {
        let kids = tree.children(v);
        if kids.is_empty() {
            continue;
        }
        let missing = || Error::MissingSolution {
            node: tree.node(v).id.clone(),
        };
        let sol = solutions[v].as_ref().ok_or_else(missing)?;
        let star = stars[v].as_ref().ok_or_else(missing)?;
        if star.len() != kids.len() {
            return Err(Error::invalid(format!(
                "star of node '{}' has {} children, the tree has {}",
                tree.node(v).id,
                star.len(),
                kids.len()
            )));
        }
        let (angles, scale) = scaled_angles(star, sol)?;
        let phis = local_child_angles(&angles, (v != root).then(|| first_lead(star, sol) * scale));
        let r = radii[v].inner;
        let p = nodes[v].position;
        for (pos, &i) in sol.ordering.as_slice().iter().enumerate() {
            let c = kids[i];
            let alpha = base[v] + orient[v] * phis[pos];
            let flipped = sol.flips.get(i);
            let pair = star.child(i);
            let lead = pair.side(flipped) * scale;
            let trail = pair.side(!flipped) * scale;
            let wedge = if orient[v] > 0.0 {
                (alpha - lead, alpha + trail)
            } else {
                (alpha - trail, alpha + lead)
            };
            base[c] = alpha;
            orient[c] = if flipped { -orient[v] } else { orient[v] };
            nodes[c] = LayoutNode {
                position: Point {
                    x: p.x + r * alpha.cos(),
                    y: p.y + r * alpha.sin(),
                },
                inner_radius: radii[c].inner,
                outer_radius: radii[c].outer,
                wedge,
                depth: nodes[v].depth + 1,
                edge_length: r,
            };
        }
    }
    Ok(Drawing { nodes })
}

/// Angles between consecutive child edges around `v`, counterclockwise
/// from the positive x-axis; they sum to `2π`.
pub fn drawn_angles(tree: &RootedTree, drawing: &Drawing, v: usize) -> Vec<f64> {
    let p = drawing.nodes[v].position;
    let mut dirs: Vec<f64> = tree
        .children(v)
        .iter()
        .map(|&c| {
            let q = drawing.nodes[c].position;
            (q.y - p.y).atan2(q.x - p.x).rem_euclid(TAU)
        })
        .collect();
    dirs.sort_by(f64::total_cmp);
    let k = dirs.len();
    (0..k)
        .map(|i| {
            if k == 1 {
                TAU
            } else if i + 1 < k {
                dirs[i + 1] - dirs[i]
            } else {
                dirs[0] + TAU - dirs[k - 1]
            }
        })
        .collect()
}
