//! Sum-of-products approximations: merge the cycles of `I0 ∪ N_D` along a
//! minimum spanning tree of the exchange graph.

use crate::bipartite::{BipartiteModel, CostRule, Label, Matching};
use crate::error::Result;
use crate::exact::merge_cycles;
use crate::model::{Guarantee, Solution, StarInstance};
use crate::scalar::Weight;

use super::exchange::{ExchangeGraph, SpanningTree};

/// Groups the tree edges' label sets by shared elements.
///
/// Every edge `(μ, ν)` starts as the list `[M_μ, m_μ, M_ν, m_ν]`. Lists
/// are visited in order; while scanning a list element by element
/// (including elements appended during the scan), each other remaining
/// list containing the current element is appended to it and dropped.
/// Duplicates are kept, so the result shows the merge history.
pub fn merge_label_sets(pairs: &[(usize, usize)]) -> Vec<Vec<Label>> {
    let mut sets: Vec<Option<Vec<Label>>> = pairs
        .iter()
        .map(|&(mu, nu)| {
            Some(vec![
                Label::Big(mu),
                Label::Small(mu),
                Label::Big(nu),
                Label::Small(nu),
            ])
        })
        .collect();
    let mut holders: std::collections::HashMap<Label, Vec<usize>> =
        std::collections::HashMap::new();
    for (k, &(mu, nu)) in pairs.iter().enumerate() {
        for x in [
            Label::Big(mu),
            Label::Small(mu),
            Label::Big(nu),
            Label::Small(nu),
        ] {
            holders.entry(x).or_default().push(k);
        }
    }
    for a in 0..sets.len() {
        let Some(mut list) = sets[a].take() else {
            continue;
        };
        let mut pos = 0;
        while pos < list.len() {
            let x = list[pos];
            for &b in holders.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if b != a {
                    if let Some(other) = sets[b].take() {
                        list.extend(other);
                    }
                }
            }
            pos += 1;
        }
        sets[a] = Some(list);
    }
    sets.into_iter().flatten().collect()
}

/// Distinct label indices of each merged set, ascending.
pub fn components_of(merged: &[Vec<Label>]) -> Vec<Vec<usize>> {
    merged
        .iter()
        .map(|set| {
            let mut idx: Vec<usize> = set
                .iter()
                .map(|l| match *l {
                    Label::Big(i) | Label::Small(i) => i,
                })
                .collect();
            idx.sort_unstable();
            idx.dedup();
            idx
        })
        .collect()
}

/// Pairing inside one component as `(big position, small position)`
/// pairs over positions `0..l`.
pub type Pairing = Vec<(usize, usize)>;

/// Shifted pairing: `M'_j – m'_{j+1}` and `M'_l – m'_1`.
pub fn shifted_pairing(l: usize) -> Pairing {
    (0..l).map(|j| (j, (j + 1) % l)).collect()
}

/// Greedy zigzag pairing driven by the gaps `gaps[j] = M'_j − M'_{j+1}`.
///
/// For `j = 0..l−2`: if `gaps[j] ≥ gaps[j+1]` the largest unmatched `M'`
/// takes the second-smallest unmatched `m'`; otherwise the smallest
/// unmatched `m'` takes the second-largest unmatched `M'`. The two `M'`
/// and two `m'` left over are crossed with the last ones.
pub fn zigzag_pairing<W: Weight>(gaps: &[W]) -> Pairing {
    let l = gaps.len() + 1;
    if l < 2 {
        return vec![(0, 0)];
    }
    // Each unmatched list is a held element followed by the range `next..l`;
    // only its first or second entry is ever removed.
    let take = |(held, next): &mut (usize, usize), second: bool| {
        if second {
            *next += 1;
            *next - 1
        } else {
            let out = *held;
            *held = *next;
            *next += 1;
            out
        }
    };
    let (mut big, mut small) = ((0, 1), (0, 1));
    let mut out = Vec::with_capacity(l);
    for j in 0..l - 2 {
        if gaps[j] >= gaps[j + 1] {
            let b = take(&mut big, false);
            out.push((b, take(&mut small, true)));
        } else {
            let b = take(&mut big, true);
            out.push((b, take(&mut small, false)));
        }
    }
    // Two of each remain: the held element and `l - 1`.
    out.push((big.0, l - 1));
    out.push((l - 1, small.0));
    out
}

/// Whether a pairing over `0..l` is one cycle when read as a permutation.
pub fn is_single_cycle(pairing: &Pairing) -> bool {
    let l = pairing.len();
    let mut next = vec![usize::MAX; l];
    for &(b, s) in pairing {
        next[b] = s;
    }
    let mut seen = 0;
    let mut x = 0;
    loop {
        x = next[x];
        seen += 1;
        if x == 0 || x == usize::MAX || seen > l {
            break;
        }
    }
    x == 0 && seen == l
}

/// Which final pairing rule to apply inside each component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingRule {
    /// Shifted pairing; 2-approximation for the sum of products.
    Shifted,
    /// Zigzag pairing; bounds the excess over `Σ M_i m_i`.
    Zigzag,
}

/// Everything the merge approximations compute.
#[derive(Clone, Debug)]
pub struct MergeOutcome<W> {
    pub solution: Solution<W>,
    pub matching: Matching,
    /// `c(N_APX)` under products.
    pub cost: W,
    /// `Σ M_i m_i`.
    pub default_cost: W,
    /// `Σ M_i m_i` plus the spanning tree's total `ψ`.
    pub lower_bound: W,
    /// Number of cycles of `I0 ∪ N_D`.
    pub subcycles: usize,
    pub tree: SpanningTree<W>,
    /// Merged label sets before duplicate removal.
    pub merged_sets: Vec<Vec<Label>>,
    pub components: Vec<Vec<usize>>,
}

/// Builds the merged matching for a model.
pub fn merge_matching<W: Weight>(
    model: &BipartiteModel<W>,
    rule: PairingRule,
) -> MergeOutcomeParts<W> {
    let graph = ExchangeGraph::new(model);
    let eta = graph.node_count();
    let tree = graph.minimum_spanning_tree();
    let pairs: Vec<(usize, usize)> = tree
        .edges
        .iter()
        .map(|e| (e.witness.mu, e.witness.nu))
        .collect();
    let merged_sets = merge_label_sets(&pairs);
    let components = components_of(&merged_sets);
    let nd = model.default_matching();
    let mut mate: Vec<usize> = (0..2 * model.n()).map(|e| nd.mate(e)).collect();
    let big = model.big();
    let small = model.small();
    for comp in &components {
        let l = comp.len();
        let pairing = match rule {
            PairingRule::Shifted => shifted_pairing(l),
            PairingRule::Zigzag => {
                let gaps: Vec<W> = (0..l - 1)
                    .map(|j| model.big_value(comp[j]) - model.big_value(comp[j + 1]))
                    .collect();
                zigzag_pairing(&gaps)
            }
        };
        for (bj, sj) in pairing {
            let (x, y) = (big[comp[bj]], small[comp[sj]]);
            mate[x] = y;
            mate[y] = x;
        }
    }
    let matching = Matching::from_mate(mate).expect("component rewiring keeps a perfect matching");
    let default_cost = model.default_product_cost();
    let lower_bound = default_cost + tree.total();
    MergeOutcomeParts {
        matching,
        default_cost,
        lower_bound,
        subcycles: eta,
        tree,
        merged_sets,
        components,
    }
}

/// [`MergeOutcome`] without the decoded solution.
#[derive(Clone, Debug)]
pub struct MergeOutcomeParts<W> {
    pub matching: Matching,
    pub default_cost: W,
    pub lower_bound: W,
    pub subcycles: usize,
    pub tree: SpanningTree<W>,
    pub merged_sets: Vec<Vec<Label>>,
    pub components: Vec<Vec<usize>>,
}

fn finish<W: Weight>(
    instance: &StarInstance<W>,
    model: &BipartiteModel<W>,
    parts: MergeOutcomeParts<W>,
    name: &str,
    guarantee: Guarantee,
) -> Result<MergeOutcome<W>> {
    let (sigma, t) = parts.matching.decode()?;
    let solution = Solution::evaluate(instance, sigma, t, name, guarantee)?;
    let cost = model.cost(&parts.matching, CostRule::Product);
    Ok(MergeOutcome {
        solution,
        matching: parts.matching,
        cost,
        default_cost: parts.default_cost,
        lower_bound: parts.lower_bound,
        subcycles: parts.subcycles,
        tree: parts.tree,
        merged_sets: parts.merged_sets,
        components: parts.components,
    })
}

/// Sum of products within twice the optimum (C3 with the given flips; C1
/// and C4 with free flips). `O(n²)`.
pub fn approx_sop<W: Weight>(instance: &StarInstance<W>) -> Result<MergeOutcome<W>> {
    let model = BipartiteModel::for_instance(instance)?;
    let parts = merge_matching(&model, PairingRule::Shifted);
    finish(
        instance,
        &model,
        parts,
        "merge-sop",
        Guarantee::Approximate { factor: 2 },
    )
}

/// Standard deviation with the excess `SOP − Σ M_i m_i` within `n` times the
/// optimal excess. `O(n²)`.
pub fn approx_de<W: Weight>(instance: &StarInstance<W>) -> Result<MergeOutcome<W>> {
    let model = BipartiteModel::for_instance(instance)?;
    let parts = merge_matching(&model, PairingRule::Zigzag);
    finish(instance, &model, parts, "merge-de", Guarantee::LinearExcess)
}

/// Aspect ratio within twice the optimum: the max-min merge keeps the best
/// smallest angle and no angle exceeds twice the largest sub-wedge.
pub fn approx_ra<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    let model = BipartiteModel::for_instance(instance)?;
    let (sigma, t) = merge_cycles(&model).decode()?;
    Solution::evaluate(
        instance,
        sigma,
        t,
        "merge-ra",
        Guarantee::Approximate { factor: 2 },
    )
}
