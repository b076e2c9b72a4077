//! Optimizes every node of a tree and draws the result.

use std::time::{Duration, Instant};

use super::sns::{sns_layout, SnsLayout, SnsOptions};
use super::{first_lead, local_child_angles, realize, scaled_angles, shrink_to_uneven, Drawing};
use crate::error::{Error, Result};
use crate::model::{Case, Problem, RootedTree, Solution, StarInstance};
use crate::oracle::OracleBudget;
use crate::solve::{solve, Solved, SolverChoice};
use crate::Star;

/// Solver output for one internal node.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeResult {
    pub node: usize,
    pub star: Star,
    pub solved: Solved<f64>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeOptimization {
    pub sns: SnsLayout,
    /// Results of internal nodes in post-order.
    pub results: Vec<NodeResult>,
    pub drawing: Drawing,
}

/// Clockwise and counterclockwise angular extents of a set of disks seen
/// from `(−d, 0)`, relative to the positive x-axis; the origin is included.
fn extents(disks: &[(f64, f64, f64)], d: f64) -> (f64, f64) {
    let (mut cw, mut ccw) = (0.0f64, 0.0f64);
    for &(x, y, rho) in disks {
        let (dx, dy) = (x + d, y);
        let dist = dx.hypot(dy);
        if dist <= rho {
            return (std::f64::consts::PI, std::f64::consts::PI);
        }
        let ang = dy.atan2(dx);
        let half = (rho / dist).asin();
        ccw = ccw.max(ang + half);
        cw = cw.max(half - ang);
    }
    (cw, ccw)
}

/// Star of internal node `v` for `case`.
///
/// C1 uses the even star of the layout. The other cases shrink each
/// child's sub-wedges to the extents of its drawn children circles (seen
/// from `v`), so the two sides of a child can differ; children without a
/// star or solution keep their even extent. The result is normalized.
pub fn node_star(
    tree: &RootedTree,
    sns: &SnsLayout,
    case: Case,
    v: usize,
    stars: &[Option<Star>],
    solutions: &[Option<Solution<f64>>],
) -> Result<Star> {
    let even = sns.stars[v]
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("node '{}' is a leaf", tree.node(v).id)))?;
    if case == Case::C1 {
        return Ok(even.clone());
    }
    let r = sns.radii[v].inner;
    let required: Vec<(f64, f64)> = tree
        .children(v)
        .iter()
        .map(|&c| match (&stars[c], &solutions[c]) {
            (Some(cs), Some(sol)) => {
                let (angles, scale) = scaled_angles(cs, sol)?;
                let phis = local_child_angles(&angles, Some(first_lead(cs, sol) * scale));
                let rc = sns.radii[c].inner;
                let kids = tree.children(c);
                let mut disks: Vec<(f64, f64, f64)> = sol
                    .ordering
                    .as_slice()
                    .iter()
                    .zip(&phis)
                    .map(|(&i, &phi)| (rc * phi.cos(), rc * phi.sin(), sns.radii[kids[i]].outer))
                    .collect();
                disks.push((0.0, 0.0, 0.0));
                Ok(extents(&disks, r))
            }
            _ => {
                let h = super::half_width(sns.radii[c].outer, r);
                Ok((h, h))
            }
        })
        .collect::<Result<_>>()?;
    shrink_to_uneven(even, &required)?
        .with_case(case)?
        .normalize()
}

/// Runs the solver on the star of every internal node, bottom-up (see
/// [`node_star`]). Reported angles are the drawn ones.
pub fn optimize_tree(
    tree: &RootedTree,
    problem: Problem,
    case: Case,
    choice: SolverChoice,
    budget: &OracleBudget,
    options: &SnsOptions,
) -> Result<TreeOptimization> {
    let sns = sns_layout(tree, options)?;
    let n = tree.len();
    let mut stars: Vec<Option<Star>> = vec![None; n];
    let mut solutions: Vec<Option<Solution<f64>>> = vec![None; n];
    let mut results = Vec::new();
    for v in tree.internal_postorder() {
        let star = node_star(tree, &sns, case, v, &stars, &solutions)?;
        let start = Instant::now();
        let solved = solve(&star, problem, choice, budget)?;
        let elapsed = start.elapsed();
        solutions[v] = Some(solved.solution.clone());
        stars[v] = Some(star.clone());
        results.push(NodeResult {
            node: v,
            star,
            solved,
            elapsed,
        });
    }
    let drawing = realize(tree, &stars, &sns.radii, &solutions)?;
    Ok(TreeOptimization {
        sns,
        results,
        drawing,
    })
}

/// Stars of a finished optimization, indexed by node.
pub fn stars_by_node(tree: &RootedTree, opt: &TreeOptimization) -> Vec<Option<StarInstance<f64>>> {
    let mut out = vec![None; tree.len()];
    for r in &opt.results {
        out[r.node] = Some(r.star.clone());
    }
    out
}
