//! Sub-wedges as endpoints of a bipartite graph.
//!
//! Child `c` owns the two endpoints `2c` (its sub-wedge `w0`) and `2c + 1`
//! (`w1`); the fixed pairing between them is `I0`. A drawing corresponds to
//! a perfect matching `N` that joins each child's trailing sub-wedge to the
//! next child's leading one, and `I0 ∪ N` is then a single cycle through all
//! `2n` endpoints. The angles are the `N`-edge sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Case, CircularOrdering, FlipAssignment, StarInstance};
use crate::scalar::{wsum, Weight};

pub type Endpoint = usize;

#[inline]
pub fn endpoint(child: usize, side: bool) -> Endpoint {
    2 * child + side as usize
}

#[inline]
pub fn child_of(e: Endpoint) -> usize {
    e / 2
}

#[inline]
pub fn side_of(e: Endpoint) -> bool {
    e % 2 == 1
}

/// The other endpoint of the same child.
#[inline]
pub fn i0_partner(e: Endpoint) -> Endpoint {
    e ^ 1
}

/// Edge cost rule: sums for angle criteria, products for the sum of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostRule {
    Sum,
    Product,
}

/// Rank label of an endpoint: `Big(i)` is the `(i+1)`-th largest in `V`,
/// `Small(i)` the `(i+1)`-th smallest in `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Big(usize),
    Small(usize),
}

/// The split of the `2n` sub-wedges into `V` and `U` with sorted labels.
#[derive(Clone, Debug)]
pub struct BipartiteModel<W> {
    n: usize,
    phi: Vec<W>,
    in_v: Vec<bool>,
    big: Vec<Endpoint>,
    small: Vec<Endpoint>,
    label: Vec<Label>,
    fixed: bool,
}

fn sort_endpoints<W: Weight>(phi: &[W], items: &mut [Endpoint]) {
    items.sort_by(|&a, &b| {
        phi[a]
            .partial_cmp(&phi[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
}

impl<W: Weight> BipartiteModel<W> {
    /// `V` = the `n` largest sub-wedges, `U` = the `n` smallest (ties by
    /// endpoint index). Used for flexible flips (and even sub-wedges).
    pub fn flexible(instance: &StarInstance<W>) -> Self {
        let n = instance.len();
        let phi = Self::phi_of(instance);
        let mut all: Vec<Endpoint> = (0..2 * n).collect();
        sort_endpoints(&phi, &mut all);
        let small = all[..n].to_vec();
        let big: Vec<Endpoint> = all[n..].iter().rev().copied().collect();
        Self::assemble(phi, big, small, false)
    }

    /// `V` = every child's `w0` (leading), `U` = every child's `w1`.
    pub fn fixed(instance: &StarInstance<W>) -> Self {
        let n = instance.len();
        let phi = Self::phi_of(instance);
        let mut v: Vec<Endpoint> = (0..n).map(|c| endpoint(c, false)).collect();
        let mut u: Vec<Endpoint> = (0..n).map(|c| endpoint(c, true)).collect();
        sort_endpoints(&phi, &mut v);
        v.reverse();
        sort_endpoints(&phi, &mut u);
        Self::assemble(phi, v, u, true)
    }

    /// The model matching the instance's case (fixed split for C3).
    pub fn for_instance(instance: &StarInstance<W>) -> Result<Self> {
        match instance.case() {
            Case::C3 => Ok(Self::fixed(instance)),
            Case::C1 | Case::C4 => Ok(Self::flexible(instance)),
            Case::C2 => Err(Error::invalid(
                "the bipartite model applies to unordered children (C1, C3, C4)",
            )),
        }
    }

    fn phi_of(instance: &StarInstance<W>) -> Vec<W> {
        instance
            .children()
            .iter()
            .flat_map(|c| [c.w0, c.w1])
            .collect()
    }

    fn assemble(phi: Vec<W>, big: Vec<Endpoint>, small: Vec<Endpoint>, fixed: bool) -> Self {
        let n = big.len();
        let mut in_v = vec![false; 2 * n];
        let mut label = vec![Label::Big(0); 2 * n];
        for (i, &e) in big.iter().enumerate() {
            in_v[e] = true;
            label[e] = Label::Big(i);
        }
        for (i, &e) in small.iter().enumerate() {
            label[e] = Label::Small(i);
        }
        BipartiteModel {
            n,
            phi,
            in_v,
            big,
            small,
            label,
            fixed,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `V`/`U` follow the given flips (C3) rather than the sizes.
    pub fn is_fixed(&self) -> bool {
        self.fixed
    }

    #[inline]
    pub fn phi(&self, e: Endpoint) -> W {
        self.phi[e]
    }

    #[inline]
    pub fn in_v(&self, e: Endpoint) -> bool {
        self.in_v[e]
    }

    /// `V` sorted nonincreasing (`M_1, M_2, …`).
    pub fn big(&self) -> &[Endpoint] {
        &self.big
    }

    /// `U` sorted nondecreasing (`m_1, m_2, …`).
    pub fn small(&self) -> &[Endpoint] {
        &self.small
    }

    pub fn label(&self, e: Endpoint) -> Label {
        self.label[e]
    }

    /// `M_i` for 0-based `i`.
    pub fn big_value(&self, i: usize) -> W {
        self.phi[self.big[i]]
    }

    /// `m_i` for 0-based `i`.
    pub fn small_value(&self, i: usize) -> W {
        self.phi[self.small[i]]
    }

    #[inline]
    pub fn edge_cost(&self, a: Endpoint, b: Endpoint, rule: CostRule) -> W {
        match rule {
            CostRule::Sum => self.phi[a] + self.phi[b],
            CostRule::Product => self.phi[a] * self.phi[b],
        }
    }

    pub fn cost(&self, m: &Matching, rule: CostRule) -> W {
        wsum(
            m.pairs()
                .into_iter()
                .map(|(a, b)| self.edge_cost(a, b, rule)),
        )
    }

    /// `M_i` matched with `m_i` for every `i`.
    pub fn default_matching(&self) -> Matching {
        Matching::from_pairs(
            2 * self.n,
            self.big.iter().copied().zip(self.small.iter().copied()),
        )
        .expect("labels are a bijection")
    }

    /// `Σ M_i m_i`, the cost of the default matching under products.
    pub fn default_product_cost(&self) -> W {
        wsum((0..self.n).map(|i| self.big_value(i) * self.small_value(i)))
    }

    /// Whether every `N` edge joins `V` to `U`.
    pub fn is_bipartite_matching(&self, m: &Matching) -> bool {
        m.pairs()
            .into_iter()
            .all(|(a, b)| self.in_v[a] != self.in_v[b])
    }
}

/// A perfect matching on the `2n` endpoints, stored as a mate array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Endpoint>,
}

impl Matching {
    pub fn from_pairs(
        size: usize,
        pairs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
    ) -> Result<Self> {
        let mut mate = vec![usize::MAX; size];
        for (a, b) in pairs {
            if a >= size || b >= size || a == b {
                return Err(Error::invalid(format!("bad matching edge ({a}, {b})")));
            }
            if mate[a] != usize::MAX || mate[b] != usize::MAX {
                return Err(Error::invalid(format!(
                    "endpoint matched twice in edge ({a}, {b})"
                )));
            }
            mate[a] = b;
            mate[b] = a;
        }
        if let Some(e) = mate.iter().position(|&m| m == usize::MAX) {
            return Err(Error::invalid(format!("endpoint {e} is unmatched")));
        }
        Ok(Matching { mate })
    }

    /// From a mate array; fails unless it is a fixed-point-free involution.
    pub fn from_mate(mate: Vec<Endpoint>) -> Result<Self> {
        let size = mate.len();
        for (a, &b) in mate.iter().enumerate() {
            if b >= size || b == a || mate[b] != a {
                return Err(Error::invalid(format!(
                    "mate array is inconsistent at endpoint {a}"
                )));
            }
        }
        Ok(Matching { mate })
    }

    /// The matching traced by a drawing: each child's trailing sub-wedge
    /// is matched to the next child's leading one.
    pub fn from_drawing(sigma: &CircularOrdering, t: &FlipAssignment) -> Result<Self> {
        let n = sigma.len();
        if t.len() != n {
            return Err(Error::invalid("ordering and flips differ in length"));
        }
        if n == 1 {
            return Matching::from_pairs(2, [(0, 1)]);
        }
        Matching::from_pairs(
            2 * n,
            (0..n).map(|i| {
                let a = sigma.at(i);
                let b = sigma.at(i + 1);
                (endpoint(a, !t.get(a)), endpoint(b, t.get(b)))
            }),
        )
    }

    pub fn size(&self) -> usize {
        self.mate.len()
    }

    #[inline]
    pub fn mate(&self, e: Endpoint) -> Endpoint {
        self.mate[e]
    }

    pub fn contains(&self, a: Endpoint, b: Endpoint) -> bool {
        a < self.mate.len() && self.mate[a] == b
    }

    /// Edges with the smaller endpoint first, in endpoint order.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..self.mate.len())
            .filter(|&a| a < self.mate[a])
            .map(|a| (a, self.mate[a]))
            .collect()
    }

    #[inline]
    pub(crate) fn swap_partners(&mut self, x: Endpoint, y: Endpoint) {
        let (bx, by) = (self.mate[x], self.mate[y]);
        self.mate[x] = by;
        self.mate[by] = x;
        self.mate[y] = bx;
        self.mate[bx] = y;
    }

    /// Replaces `(a, b)` and `(c, d)` by `(a, d)` and `(c, b)`.
    pub fn exchange(&self, e1: (Endpoint, Endpoint), e2: (Endpoint, Endpoint)) -> Result<Matching> {
        let (a, b) = e1;
        let (c, d) = e2;
        if !self.contains(a, b) || !self.contains(c, d) {
            return Err(Error::invalid("exchange needs two edges of the matching"));
        }
        if a == c || a == d {
            return Err(Error::invalid("exchange needs two distinct edges"));
        }
        let mut out = self.clone();
        out.swap_partners(a, c);
        Ok(out)
    }

    /// Decomposes `I0 ∪ N` into cycles.
    pub fn subcycles(&self) -> SubcycleSet {
        let size = self.mate.len();
        let mut cycle_of = vec![usize::MAX; size];
        let mut cycles = Vec::new();
        for s in 0..size {
            if cycle_of[s] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut members = Vec::new();
            let mut e = s;
            loop {
                cycle_of[e] = id;
                members.push(e);
                let f = i0_partner(e);
                cycle_of[f] = id;
                members.push(f);
                e = self.mate[f];
                if e == s || cycle_of[e] != usize::MAX {
                    break;
                }
            }
            cycles.push(members);
        }
        SubcycleSet { cycle_of, cycles }
    }

    /// Reads the single cycle `I0 ∪ N` as a drawing, starting at child 0's
    /// `w0` endpoint. Fails if the union is not one cycle.
    pub fn decode(&self) -> Result<(CircularOrdering, FlipAssignment)> {
        let size = self.mate.len();
        let n = size / 2;
        let mut order = Vec::with_capacity(n);
        let mut bits = vec![false; n];
        let mut seen = vec![false; n];
        let mut e = 0;
        for _ in 0..n {
            let c = child_of(e);
            if seen[c] {
                break;
            }
            seen[c] = true;
            order.push(c);
            bits[c] = side_of(e);
            e = self.mate[i0_partner(e)];
        }
        if order.len() != n || e != 0 {
            let eta = self.subcycles().count();
            return Err(Error::NotHamiltonian(format!(
                "I0 ∪ N splits into {eta} cycles over {size} endpoints"
            )));
        }
        Ok((CircularOrdering::new(order)?, FlipAssignment::new(bits)))
    }
}

/// The cycles of `I0 ∪ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcycleSet {
    cycle_of: Vec<usize>,
    cycles: Vec<Vec<Endpoint>>,
}

impl SubcycleSet {
    /// Number of cycles (`η`).
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn cycle_of(&self, e: Endpoint) -> usize {
        self.cycle_of[e]
    }

    pub fn cycle_ids(&self) -> &[usize] {
        &self.cycle_of
    }

    /// Endpoints of each cycle in traversal order.
    pub fn cycles(&self) -> &[Vec<Endpoint>] {
        &self.cycles
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_definition_and_involution() {
        let n = Matching::from_pairs(6, [(2, 3), (1, 4), (0, 5)]).unwrap();
        let x = n.exchange((2, 3), (1, 4)).unwrap();
        assert!(x.contains(2, 4) && x.contains(1, 3) && x.contains(0, 5));
        let back = x.exchange((2, 4), (1, 3)).unwrap();
        assert_eq!(back, n);
        assert!(n.exchange((2, 4), (1, 3)).is_err());
    }

    #[test]
    fn default_matching_cost() {
        let inst = StarInstance::from_pairs(&[(10, 1), (9, 2)], Case::C3).unwrap();
        let model = BipartiteModel::fixed(&inst);
        let nd = model.default_matching();
        assert_eq!(model.cost(&nd, CostRule::Product), 28);
        assert_eq!(model.default_product_cost(), 28);
        let one = StarInstance::from_pairs(&[(3, 4)], Case::C4).unwrap();
        assert_eq!(
            BipartiteModel::flexible(&one).default_matching().pairs(),
            vec![(0, 1)]
        );
    }

    #[test]
    fn drawing_round_trip() {
        let sigma = CircularOrdering::new(vec![0, 3, 1, 2]).unwrap();
        let t = FlipAssignment::new(vec![false, true, true, false]);
        let m = Matching::from_drawing(&sigma, &t).unwrap();
        assert!(m.subcycles().is_hamiltonian());
        let (s2, t2) = m.decode().unwrap();
        assert_eq!(s2, sigma);
        assert_eq!(t2, t);
    }

    #[test]
    fn split_matching_is_not_decodable() {
        // Two children each closed on themselves.
        let m = Matching::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(m.subcycles().count(), 2);
        assert!(matches!(m.decode(), Err(Error::NotHamiltonian(_))));
    }
}
