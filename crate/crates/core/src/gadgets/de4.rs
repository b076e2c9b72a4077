//! Sum-of-products star built from a cubic graph: a Hamiltonian cycle of the
//! graph yields a drawing with sum of products exactly `Σ M_i m_i + 7n`.
//!
//! Each graph node `i` owns a block of seven upper and seven lower nodes.
//! Slot `s` of block `i` is upper node `7i + s` and lower node `7i + s`.
//! The slots hold, in order: the copy of neighbour `j`, a λ-node, a b-node,
//! the copy of neighbour `k`, a b-node, the copy of neighbour `l`, and a
//! λ-node, where `j < k < l` are the node's neighbours.

use serde::{Deserialize, Serialize};

use crate::approx::factor_bound::gap_condition;
use crate::bipartite::{child_of, endpoint, side_of, BipartiteModel, Endpoint, Matching};
use crate::error::{Error, Result};
use crate::model::{Case, StarInstance, SubWedgePair};

/// Simple undirected graph in which every node has degree three.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicGraph {
    adjacency: Vec<[usize; 3]>,
}

impl CubicGraph {
    /// Builds the graph from an edge list over `0..n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) names a node outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if adj[a].contains(&b) {
                return Err(Error::InvalidGraph(format!("parallel edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut adjacency = Vec::with_capacity(n);
        for (v, mut list) in adj.into_iter().enumerate() {
            if list.len() != 3 {
                return Err(Error::InvalidGraph(format!(
                    "node {v} has degree {}",
                    list.len()
                )));
            }
            list.sort_unstable();
            adjacency.push([list[0], list[1], list[2]]);
        }
        Ok(CubicGraph { adjacency })
    }

    /// The complete graph on four nodes.
    pub fn k4() -> Self {
        Self::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// The complete bipartite graph with sides `{0, 1, 2}` and `{3, 4, 5}`.
    pub fn k33() -> Self {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        Self::new(6, &edges).unwrap()
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Neighbours in increasing order.
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adjacency.iter().enumerate() {
            out.extend(nb.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Whether `cycle` visits every node once along graph edges.
    pub fn is_hamiltonian_cycle(&self, cycle: &[usize]) -> bool {
        let n = self.len();
        if cycle.len() != n || n < 3 {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in cycle {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..n).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % n]))
    }
}

/// What a slot of a block represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SlotRole {
    /// Copy `copy` (0..3) of graph node `node`; upper `v`, lower `u`.
    V { node: usize, copy: usize },
    /// λ-node number `0..2n`.
    Lambda { index: usize },
    /// b-node number `0..2n`.
    B { index: usize },
}

/// The fourteen nodes of one graph node's block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub index: usize,
    pub upper: [i64; 7],
    pub lower: [i64; 7],
    pub roles: [SlotRole; 7],
}

/// Upper and lower values of block `i` (0-based) in a gadget over `n` nodes.
pub fn block_values(n: usize, i: usize) -> ([i64; 7], [i64; 7]) {
    let n = n as i64;
    let i1 = i as i64 + 1;
    let kappa = 9 * n * (2 * n + 2 - i1);
    let base = 9 * n * i1;
    let a = [0, 2, 3, 4, 6, 8, 9].map(|d| kappa - d);
    let b = [0, 1, 2, 3, 5, 7, 9].map(|d| base + d);
    (a, b)
}

/// Slots of the three neighbour copies inside a block.
pub const V_SLOTS: [usize; 3] = [0, 3, 5];
const LAMBDA_SLOTS: [usize; 2] = [1, 6];
const B_SLOTS: [usize; 2] = [2, 4];

/// City matching as `(upper node, lower node)` pairs, grouped by kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CityMatching {
    /// Each b-node with its own lower node.
    pub b: Vec<(usize, usize)>,
    /// `v_{x,c}` with `u_{x,c+1 mod 3}` for every graph node `x`.
    pub v: Vec<(usize, usize)>,
    /// `λ_k` with `λ'_{k−1 mod 2n}`.
    pub lambda: Vec<(usize, usize)>,
}

impl CityMatching {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.b.iter().chain(&self.v).chain(&self.lambda).copied()
    }
}

/// The star built from a cubic graph.
#[derive(Clone, Debug)]
pub struct De4Gadget {
    pub graph: CubicGraph,
    pub blocks: Vec<Block>,
    pub city: CityMatching,
    /// Children are the city pairs: child `c` has upper node `c` as `w0`
    /// and its city partner as `w1`.
    pub instance: StarInstance<i64>,
    /// `Σ M_i m_i + 7n`.
    pub ub: i64,
    /// Child whose `w1` is lower node `l`.
    pub child_of_lower: Vec<usize>,
    /// City partner of each upper node.
    pub lower_of_upper: Vec<usize>,
    /// Whether the sorted values satisfy the gap condition.
    pub gap_premise: bool,
}

/// Builds the gadget for a cubic graph with at least two nodes.
pub fn gen_de4_from_cubic(graph: &CubicGraph) -> Result<De4Gadget> {
    let n = graph.len();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "at least two nodes are required".into(),
        ));
    }
    // copies[x][c] = (block, slot) of the c-th copy of x, ordered by block.
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let (upper, lower) = block_values(n, i);
        let nb = graph.neighbors(i);
        let mut roles = [SlotRole::Lambda { index: 0 }; 7];
        for (k, &slot) in V_SLOTS.iter().enumerate() {
            let x = nb[k];
            roles[slot] = SlotRole::V {
                node: x,
                copy: copies[x].len(),
            };
            copies[x].push(7 * i + slot);
        }
        for (k, &slot) in LAMBDA_SLOTS.iter().enumerate() {
            roles[slot] = SlotRole::Lambda { index: 2 * i + k };
        }
        for (k, &slot) in B_SLOTS.iter().enumerate() {
            roles[slot] = SlotRole::B { index: 2 * i + k };
        }
        blocks.push(Block {
            index: i,
            upper,
            lower,
            roles,
        });
    }
    let lambda_node = |k: usize| 7 * (k / 2) + LAMBDA_SLOTS[k % 2];
    let city = CityMatching {
        b: (0..n)
            .flat_map(|i| B_SLOTS.map(|s| (7 * i + s, 7 * i + s)))
            .collect(),
        v: copies
            .iter()
            .flat_map(|c| (0..3).map(move |k| (c[k], c[(k + 1) % 3])))
            .collect(),
        lambda: (0..2 * n)
            .map(|k| (lambda_node(k), lambda_node((k + 2 * n - 1) % (2 * n))))
            .collect(),
    };
    let value_upper = |u: usize| blocks[u / 7].upper[u % 7];
    let value_lower = |l: usize| blocks[l / 7].lower[l % 7];
    let mut lower_of_upper = vec![usize::MAX; 7 * n];
    let mut child_of_lower = vec![usize::MAX; 7 * n];
    for (u, l) in city.pairs() {
        lower_of_upper[u] = l;
        child_of_lower[l] = u;
    }
    debug_assert!(child_of_lower.iter().all(|&c| c != usize::MAX));
    let children = (0..7 * n)
        .map(|u| SubWedgePair::new(value_upper(u), value_lower(lower_of_upper[u])))
        .collect();
    let instance = StarInstance::new(children, Case::C4)?;
    let default: i64 = blocks
        .iter()
        .flat_map(|b| (0..7).map(move |s| b.upper[s] * b.lower[s]))
        .sum();
    let big: Vec<i64> = blocks.iter().flat_map(|b| b.upper).collect();
    let small: Vec<i64> = blocks.iter().flat_map(|b| b.lower).collect();
    let gap_premise = gap_condition(&big, &small);
    Ok(De4Gadget {
        graph: graph.clone(),
        blocks,
        city,
        instance,
        ub: default + 7 * n as i64,
        child_of_lower,
        lower_of_upper,
        gap_premise,
    })
}

/// Which of the three admissible in-block matchings to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockChoice {
    /// Merges the copy of `l` into the λ cycle.
    I,
    /// Merges the copy of `j`.
    Ii,
    /// Merges the copy of `k`.
    Iii,
}

impl BlockChoice {
    /// `perm[s]` is the lower slot matched with upper slot `s`.
    pub fn permutation(self) -> [usize; 7] {
        match self {
            BlockChoice::I => [0, 2, 1, 4, 3, 6, 5],
            BlockChoice::Ii => [1, 0, 3, 2, 5, 4, 6],
            BlockChoice::Iii => [0, 2, 3, 1, 5, 4, 6],
        }
    }
}

impl De4Gadget {
    /// Number of graph nodes.
    pub fn n(&self) -> usize {
        self.graph.len()
    }

    pub fn upper_endpoint(&self, u: usize) -> Endpoint {
        endpoint(u, false)
    }

    pub fn lower_endpoint(&self, l: usize) -> Endpoint {
        endpoint(self.child_of_lower[l], true)
    }

    /// `(is upper, node index)` of an endpoint.
    pub fn node_of(&self, e: Endpoint) -> (bool, usize) {
        let c = child_of(e);
        if side_of(e) {
            (false, self.lower_of_upper[c])
        } else {
            (true, c)
        }
    }

    pub fn model(&self) -> BipartiteModel<i64> {
        BipartiteModel::flexible(&self.instance)
    }

    /// Transition matching with the given per-block choices.
    pub fn transition_matching(&self, choices: &[BlockChoice]) -> Result<Matching> {
        if choices.len() != self.n() {
            return Err(Error::invalid("one choice per block is required"));
        }
        let pairs = choices.iter().enumerate().flat_map(|(i, c)| {
            c.permutation().into_iter().enumerate().map(move |(s, p)| {
                (
                    self.upper_endpoint(7 * i + s),
                    self.lower_endpoint(7 * i + p),
                )
            })
        });
        Matching::from_pairs(14 * self.n(), pairs)
    }

    /// The vertical matching `M_i – m_i`.
    pub fn default_transition(&self) -> Matching {
        let pairs = (0..7 * self.n()).map(|s| (self.upper_endpoint(s), self.lower_endpoint(s)));
        Matching::from_pairs(14 * self.n(), pairs).expect("vertical pairs are perfect")
    }

    /// Product cost of a matching on the gadget's values.
    pub fn cost(&self, m: &Matching) -> i64 {
        m.pairs()
            .into_iter()
            .map(|(a, b)| self.value(a) * self.value(b))
            .sum()
    }

    fn value(&self, e: Endpoint) -> i64 {
        self.instance.child(child_of(e)).side(side_of(e))
    }
}

/// Transition matching for a Hamiltonian cycle of the graph: in the block
/// of each node, the copy of the node's successor on the cycle joins the
/// λ cycle.
pub fn hc_to_transition_matching(gadget: &De4Gadget, cycle: &[usize]) -> Result<Matching> {
    if !gadget.graph.is_hamiltonian_cycle(cycle) {
        return Err(Error::invalid("not a Hamiltonian cycle of the graph"));
    }
    let n = cycle.len();
    let mut choices = vec![BlockChoice::I; n];
    for k in 0..n {
        let (v, next) = (cycle[k], cycle[(k + 1) % n]);
        let nb = gadget.graph.neighbors(v);
        choices[v] = if next == nb[0] {
            BlockChoice::Ii
        } else if next == nb[1] {
            BlockChoice::Iii
        } else {
            BlockChoice::I
        };
    }
    gadget.transition_matching(&choices)
}

/// Structure of `I0 ∪ N` on a gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChcReport {
    /// Number of cycles.
    pub eta: usize,
    pub is_chc: bool,
    pub cost: i64,
    pub ub: i64,
    /// `c(N_i) − Σ_j M_{7i+j} m_{7i+j}` for each block, over the upper
    /// nodes of the block.
    pub block_delta: Vec<i64>,
    /// Transition edges joining two upper or two lower nodes.
    pub cross_side: Vec<(Endpoint, Endpoint)>,
    /// Transition edges joining different blocks.
    pub cross_block: Vec<(Endpoint, Endpoint)>,
}

/// Counts the cycles of `I0 ∪ N` and lists edges that leave a side or a block.
pub fn verify_chc(gadget: &De4Gadget, matching: &Matching) -> ChcReport {
    let n = gadget.n();
    let eta = matching.subcycles().count();
    let mut block_delta = vec![0i64; n];
    for b in &gadget.blocks {
        block_delta[b.index] = -(0..7).map(|s| b.upper[s] * b.lower[s]).sum::<i64>();
    }
    let mut cross_side = Vec::new();
    let mut cross_block = Vec::new();
    for (a, b) in matching.pairs() {
        let (ua, na) = gadget.node_of(a);
        let (ub, nb) = gadget.node_of(b);
        if ua == ub {
            cross_side.push((a, b));
        }
        if na / 7 != nb / 7 {
            cross_block.push((a, b));
        }
        let product = gadget.value(a) * gadget.value(b);
        // Attribute each edge to the block of its upper end (or of both
        // ends when it joins two upper nodes).
        match (ua, ub) {
            (true, false) => block_delta[na / 7] += product,
            (false, true) => block_delta[nb / 7] += product,
            (true, true) => {
                block_delta[na / 7] += product;
                block_delta[nb / 7] += product;
            }
            (false, false) => {}
        }
    }
    ChcReport {
        eta,
        is_chc: eta == 1,
        cost: gadget.cost(matching),
        ub: gadget.ub,
        block_delta,
        cross_side,
        cross_block,
    }
}
