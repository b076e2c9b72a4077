//! Exchange graph over the cycles of `I0 ∪ N_D` and its minimum spanning tree.

use crate::bipartite::{BipartiteModel, SubcycleSet};
use crate::scalar::Weight;

/// Cheapest exchange between two cycles: `ψ = (M_μ − M_ν)(m_ν − m_μ)`
/// with `μ < ν` (0-based label indices).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness<W> {
    pub psi: W,
    pub mu: usize,
    pub nu: usize,
}

impl<W: Weight> Witness<W> {
    /// Order by cost, then by `(μ, ν)`.
    pub fn less_than(&self, other: &Self) -> bool {
        self.psi < other.psi || (self.psi == other.psi && (self.mu, self.nu) < (other.mu, other.nu))
    }
}

/// An edge of the exchange graph between cycles `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExchangeEdge<W> {
    pub u: usize,
    pub v: usize,
    pub witness: Witness<W>,
}

/// Complete graph whose nodes are the cycles of `I0 ∪ N_D`.
///
/// Edge costs are evaluated on demand; [`ExchangeGraph::edges`]
/// materializes them all.
#[derive(Clone, Debug)]
pub struct ExchangeGraph<'a, W> {
    model: &'a BipartiteModel<W>,
    /// Label indices `i` (of the pair `M_i – m_i`) on each cycle, ascending.
    members: Vec<Vec<usize>>,
    cycle_of_index: Vec<usize>,
}

#[inline]
pub(crate) fn exchange_cost<W: Weight>(model: &BipartiteModel<W>, a: usize, b: usize) -> W {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (model.big_value(a) - model.big_value(b)) * (model.small_value(b) - model.small_value(a))
}

impl<'a, W: Weight> ExchangeGraph<'a, W> {
    /// Builds the graph for `model` from the cycles of its default matching.
    pub fn new(model: &'a BipartiteModel<W>) -> Self {
        let cycles = model.default_matching().subcycles();
        Self::from_cycles(model, &cycles)
    }

    pub fn from_cycles(model: &'a BipartiteModel<W>, cycles: &SubcycleSet) -> Self {
        let mut members = vec![Vec::new(); cycles.count()];
        let cycle_of_index: Vec<usize> = model.big().iter().map(|&e| cycles.cycle_of(e)).collect();
        for (i, &c) in cycle_of_index.iter().enumerate() {
            members[c].push(i);
        }
        ExchangeGraph {
            model,
            members,
            cycle_of_index,
        }
    }

    /// Number of nodes (`η`).
    pub fn node_count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self, cycle: usize) -> &[usize] {
        &self.members[cycle]
    }

    pub fn cycle_of_index(&self, i: usize) -> usize {
        self.cycle_of_index[i]
    }

    /// `ψ(u, v)` with the lexicographically smallest witness `(μ, ν)`.
    ///
    /// For a fixed `μ` both factors of `ψ` are non-decreasing in `ν > μ`
    /// (`M` descends and `m` ascends with the index), so each `μ` only
    /// needs its nearest larger index on the other cycle. One merge pass
    /// over the two member lists, `O(|C_u| + |C_v|)`.
    pub fn psi(&self, u: usize, v: usize) -> Option<Witness<W>> {
        if u == v {
            return None;
        }
        let (a, b) = (&self.members[u], &self.members[v]);
        let (mut i, mut j) = (a.len(), b.len());
        let mut above: [Option<usize>; 2] = [None, None];
        let mut best: Option<Witness<W>> = None;
        while i > 0 || j > 0 {
            let side = if j == 0 || (i > 0 && a[i - 1] > b[j - 1]) {
                i -= 1;
                0
            } else {
                j -= 1;
                1
            };
            let mu = if side == 0 { a[i] } else { b[j] };
            if let Some(nu) = above[1 - side] {
                let cand = Witness {
                    psi: exchange_cost(self.model, mu, nu),
                    mu,
                    nu,
                };
                if best.as_ref().is_none_or(|w| cand.less_than(w)) {
                    best = Some(cand);
                }
            }
            above[side] = Some(mu);
        }
        best
    }

    /// `ψ(u, v)` by checking every pair; the reference for [`Self::psi`].
    pub fn psi_exhaustive(&self, u: usize, v: usize) -> Option<Witness<W>> {
        if u == v {
            return None;
        }
        let mut best: Option<Witness<W>> = None;
        for &a in &self.members[u] {
            for &b in &self.members[v] {
                let (mu, nu) = if a < b { (a, b) } else { (b, a) };
                let cand = Witness {
                    psi: exchange_cost(self.model, mu, nu),
                    mu,
                    nu,
                };
                if best.as_ref().is_none_or(|w| cand.less_than(w)) {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// Every edge `u < v` with its cost; `O(η·n)` time and `O(η²)` memory.
    pub fn edges(&self) -> Vec<ExchangeEdge<W>> {
        let eta = self.node_count();
        let mut out = Vec::with_capacity(eta * eta.saturating_sub(1) / 2);
        for u in 0..eta {
            for v in u + 1..eta {
                if let Some(witness) = self.psi(u, v) {
                    out.push(ExchangeEdge { u, v, witness });
                }
            }
        }
        out
    }

    /// Minimum spanning tree by Prim's algorithm from node 0.
    ///
    /// Each edge cost is computed once, when the first of its endpoints
    /// joins the tree, so the total work is `O(η·n)` and memory stays
    /// linear. Keys compare by `(ψ, μ, ν)` and equal keys keep the
    /// lower node, so the tree is deterministic among equal-cost ones.
    pub fn minimum_spanning_tree(&self) -> SpanningTree<W> {
        let eta = self.node_count();
        let mut in_tree = vec![false; eta];
        let mut key: Vec<Option<(Witness<W>, usize)>> = vec![None; eta];
        let mut edges = Vec::with_capacity(eta.saturating_sub(1));
        if eta == 0 {
            return SpanningTree { edges };
        }
        let mut current = 0;
        in_tree[0] = true;
        for _ in 1..eta {
            for v in 0..eta {
                if in_tree[v] {
                    continue;
                }
                let Some(w) = self.psi(current, v) else {
                    continue;
                };
                let better = match &key[v] {
                    None => true,
                    Some((k, _)) => w.less_than(k),
                };
                if better {
                    key[v] = Some((w, current));
                }
            }
            let mut pick: Option<usize> = None;
            for v in 0..eta {
                if in_tree[v] {
                    continue;
                }
                let Some((k, _)) = &key[v] else { continue };
                let take = match pick {
                    None => true,
                    Some(p) => {
                        let (kp, _) = key[p].as_ref().unwrap();
                        k.less_than(kp)
                    }
                };
                if take {
                    pick = Some(v);
                }
            }
            let v = pick.expect("the exchange graph is complete");
            let (w, from) = key[v].unwrap();
            in_tree[v] = true;
            edges.push(ExchangeEdge {
                u: from.min(v),
                v: from.max(v),
                witness: w,
            });
            current = v;
        }
        SpanningTree { edges }
    }
}

/// Minimum spanning tree of the exchange graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanningTree<W> {
    pub edges: Vec<ExchangeEdge<W>>,
}

impl<W: Weight> SpanningTree<W> {
    pub fn total(&self) -> W {
        self.edges
            .iter()
            .fold(W::zero(), |acc, e| acc + e.witness.psi)
    }
}
