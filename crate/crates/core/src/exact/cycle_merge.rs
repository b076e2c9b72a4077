//! Max-min matching merged into a single cycle (angular resolution for
//! unordered children).

use crate::bipartite::{BipartiteModel, DisjointSets, Matching};
use crate::error::Result;
use crate::model::{Guarantee, Solution, StarInstance};
use crate::scalar::Weight;

/// Runs the merge procedure on a model and returns the final matching.
///
/// Start from `α_i – β_i` (smallest `U` with largest `V`). Then walk the
/// pairs `(α_j, β_{j+1})` in nonincreasing order of `α_j + β_{j+1}` (ties by
/// smaller `j`); whenever the two endpoints lie on different cycles of
/// `I0 ∪ N`, exchange their matching edges, which merges the two cycles.
/// Cycle membership is tracked with union-find over the initial cycles, so
/// the loop is linear after sorting.
pub fn merge_cycles<W: Weight>(model: &BipartiteModel<W>) -> Matching {
    let n = model.n();
    let beta = model.big();
    let alpha = model.small();
    let mut matching = model.default_matching();
    let cycles = matching.subcycles();
    let mut remaining = cycles.count();
    if remaining <= 1 {
        return matching;
    }
    let mut omega: Vec<usize> = (0..n - 1).collect();
    let key = |j: usize| model.phi(alpha[j]) + model.phi(beta[j + 1]);
    omega.sort_by(|&a, &b| {
        key(b)
            .partial_cmp(&key(a))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut sets = DisjointSets::new(remaining);
    for j in omega {
        let (a, b) = (alpha[j], beta[j + 1]);
        if sets.union(cycles.cycle_of(a), cycles.cycle_of(b)) {
            // e_a = (mate(a), a), e_b = (b, mate(b)) → (mate(a), mate(b)), (b, a)
            let ma = matching.mate(a);
            matching.swap_partners(ma, b);
            remaining -= 1;
            if remaining == 1 {
                break;
            }
        }
    }
    matching
}

/// Optimal smallest angle for unordered children (C3 with the given flips,
/// C4 or even C1 with free flips).
pub fn solve_re3_re4<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    let model = BipartiteModel::for_instance(instance)?;
    let m = merge_cycles(&model);
    let (sigma, t) = m.decode()?;
    Solution::evaluate(instance, sigma, t, "merge-re34", Guarantee::Optimal)
}
