//! Layout with subtrees of nonuniform sizes: every node's children sit on a
//! circle just large enough for their enclosing circles not to overlap.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Case, CircularOrdering, FlipAssignment, Guarantee, RootedTree, Solution, StarInstance,
    SubWedgePair,
};
use crate::Star;

/// Tuning for [`sns_layout`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnsOptions {
    /// Radius of the circle enclosing a leaf.
    pub leaf_radius: f64,
}

impl Default for SnsOptions {
    fn default() -> Self {
        SnsOptions { leaf_radius: 1.0 }
    }
}

/// Radii of one node: its children lie on the inner circle and its whole
/// subtree inside the outer one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRadii {
    pub inner: f64,
    pub outer: f64,
}

/// Result of [`sns_layout`].
#[derive(Clone, Debug, PartialEq)]
pub struct SnsLayout {
    pub radii: Vec<NodeRadii>,
    /// Even star of every internal node, children in tree order.
    pub stars: Vec<Option<Star>>,
    /// Slack added to every angle of each internal node.
    pub free_arc: Vec<f64>,
}

/// Angular half-width of a circle of radius `outer` centered at distance
/// `r`; a circle containing the center counts as a half-plane.
pub fn half_width(outer: f64, r: f64) -> f64 {
    if outer >= r {
        PI / 2.0
    } else {
        (outer / r).asin()
    }
}

/// Smallest inner radius for children with the given outer radii.
///
/// Starts from the circumference estimate `r = ΣR_i / π` and grows `r`
/// (by bisection) until `Σ 2·asin(R_i / r) ≤ 2π` with `r ≥ max R_i`, so
/// tangent-aligned sibling circles cannot overlap. A single child needs
/// no separation and keeps the estimate.
pub fn inner_radius(outer: &[f64]) -> f64 {
    let sum: f64 = outer.iter().sum();
    let estimate = sum / PI;
    if outer.len() < 2 {
        return estimate;
    }
    let max = outer.iter().copied().fold(0.0, f64::max);
    let fits = |r: f64| outer.iter().map(|&o| 2.0 * half_width(o, r)).sum::<f64>() <= TAU;
    let lo_bound = estimate.max(max);
    if fits(lo_bound) {
        return lo_bound;
    }
    let (mut lo, mut hi) = (lo_bound, lo_bound * 2.0);
    while !fits(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Bottom-up radii and even stars for every node.
pub fn sns_layout(tree: &RootedTree, options: &SnsOptions) -> Result<SnsLayout> {
    if !(options.leaf_radius > 0.0 && options.leaf_radius.is_finite()) {
        return Err(Error::invalid("leaf radius must be positive and finite"));
    }
    let n = tree.len();
    let mut radii = vec![
        NodeRadii {
            inner: options.leaf_radius,
            outer: options.leaf_radius,
        };
        n
    ];
    let mut stars = vec![None; n];
    let mut free_arc = vec![0.0; n];
    for v in tree.postorder() {
        let kids = tree.children(v);
        if kids.is_empty() {
            continue;
        }
        let outer: Vec<f64> = kids.iter().map(|&c| radii[c].outer).collect();
        let r = inner_radius(&outer);
        let big = outer.iter().copied().fold(0.0, f64::max);
        let halves: Vec<f64> = outer.iter().map(|&o| half_width(o, r)).collect();
        let used: f64 = halves.iter().sum::<f64>() * 2.0;
        let slack = ((TAU - used) / kids.len() as f64).max(0.0);
        let node_radii = NodeRadii {
            inner: r,
            outer: r + big,
        };
        if !(node_radii.outer.is_finite()) {
            return Err(Error::invalid(format!(
                "radii overflow at node '{}'; the tree is too deep for this layout",
                tree.node(v).id
            )));
        }
        radii[v] = node_radii;
        free_arc[v] = slack;
        let children = halves
            .iter()
            .map(|&h| SubWedgePair::even(h + slack / 2.0))
            .collect();
        stars[v] = Some(StarInstance::new(children, Case::C1)?);
    }
    Ok(SnsLayout {
        radii,
        stars,
        free_arc,
    })
}

impl SnsLayout {
    /// Children in tree order, no flips.
    pub fn default_solutions(&self) -> Result<Vec<Option<Solution<f64>>>> {
        self.stars
            .iter()
            .map(|s| {
                s.as_ref()
                    .map(|star| {
                        Solution::evaluate(
                            star,
                            CircularOrdering::identity(star.len()),
                            FlipAssignment::zeros(star.len()),
                            "tree-order",
                            Guarantee::None,
                        )
                    })
                    .transpose()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_leaves_share_the_circle() {
        for k in 2..10 {
            let r = inner_radius(&vec![1.0; k]);
            assert!((r - 1.0 / (PI / k as f64).sin()).abs() < 1e-9, "k={k}: {r}");
        }
    }

    #[test]
    fn one_dominant_child_sets_radius() {
        // 2·asin(1/2)·2 + π = 5π/3 ≤ 2π at r = 2.
        assert_eq!(inner_radius(&[1.0, 1.0, 2.0]), 2.0);
    }

    #[test]
    fn single_child_keeps_estimate() {
        assert!((inner_radius(&[3.0]) - 3.0 / PI).abs() < 1e-15);
    }
}
