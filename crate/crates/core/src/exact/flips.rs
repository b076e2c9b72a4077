//! Dynamic programs over the flip bits of a node whose child order is fixed.
//!
//! The children are visited in stored order. A state `(a, b)` records the
//! flip of the first child and of the current child: the first child's
//! leading sub-wedge and the current child's trailing sub-wedge are the two
//! still-open ends of the chain. Every DP runs in `O(n)` time with four
//! states per position; ties prefer flip 0 at every step.

use crate::error::Result;
use crate::model::{CircularOrdering, FlipAssignment, Guarantee, Solution, StarInstance};
use crate::scalar::{ratio_less, Weight};

/// Value of a max-min chain: an angle set that is infeasible, a finite
/// minimum, or unconstrained (no angle yet).
#[derive(Clone, Copy, Debug, PartialEq)]
enum MinVal<W> {
    Infeasible,
    At(W),
    Unbounded,
}

impl<W: Weight> MinVal<W> {
    fn meet(self, angle: W, cap: Option<W>) -> Self {
        if cap.is_some_and(|c| angle > c) {
            return MinVal::Infeasible;
        }
        match self {
            MinVal::Infeasible => MinVal::Infeasible,
            MinVal::Unbounded => MinVal::At(angle),
            MinVal::At(v) => MinVal::At(if angle < v { angle } else { v }),
        }
    }

    fn better_than(self, other: Self) -> bool {
        match (self, other) {
            (MinVal::Infeasible, _) => false,
            (_, MinVal::Infeasible) => true,
            (MinVal::Unbounded, MinVal::Unbounded) => false,
            (MinVal::Unbounded, _) => true,
            (_, MinVal::Unbounded) => false,
            (MinVal::At(a), MinVal::At(b)) => a > b,
        }
    }
}

#[inline]
fn w<W: Weight>(inst: &StarInstance<W>, child: usize, side: usize) -> W {
    inst.child(child).side(side == 1)
}

/// Runs a DP over the chain of children with `combine(prev, x, y)`, where
/// `x` trails one child and `y` leads the next, and a
/// strict "is better" relation, then closes the circle. Returns the best
/// value and the flips realizing it, or `None` when no state is reachable.
#[allow(clippy::needless_range_loop)]
fn chain_dp<W, V, C, B>(
    inst: &StarInstance<W>,
    init: V,
    combine: C,
    better: B,
) -> Option<(V, FlipAssignment)>
where
    W: Weight,
    V: Copy,
    C: Fn(V, W, W) -> V,
    B: Fn(V, V) -> bool,
{
    let n = inst.len();
    // val[a][b]: best value with first flip a and current flip b.
    let mut val: [[Option<V>; 2]; 2] = [[None; 2]; 2];
    val[0][0] = Some(init);
    val[1][1] = Some(init);
    // choice[i][a][b]: flip of child i-1 used to reach state (a, b) at child i.
    let mut choice = vec![[[0u8; 2]; 2]; n];
    for i in 1..n {
        let mut next: [[Option<V>; 2]; 2] = [[None; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for p in 0..2 {
                    let Some(prev) = val[a][p] else { continue };
                    let cand = combine(prev, w(inst, i - 1, 1 - p), w(inst, i, b));
                    let replace = match next[a][b] {
                        None => true,
                        Some(cur) => better(cand, cur),
                    };
                    if replace {
                        next[a][b] = Some(cand);
                        choice[i][a][b] = p as u8;
                    }
                }
            }
        }
        val = next;
    }
    let mut best: Option<(V, usize, usize)> = None;
    for a in 0..2 {
        for b in 0..2 {
            let Some(v) = val[a][b] else { continue };
            let cand = combine(v, w(inst, n - 1, 1 - b), w(inst, 0, a));
            if best.as_ref().is_none_or(|&(cur, _, _)| better(cand, cur)) {
                best = Some((cand, a, b));
            }
        }
    }
    let (v, a, mut b) = best?;
    let mut bits = vec![false; n];
    for i in (1..n).rev() {
        bits[i] = b == 1;
        b = choice[i][a][b] as usize;
    }
    bits[0] = a == 1;
    Some((v, FlipAssignment::new(bits)))
}

/// Max-min flips with every angle at most `cap`. Returns the minimum angle
/// (`None` if infeasible) and the flips.
fn maxmin_capped<W: Weight>(inst: &StarInstance<W>, cap: Option<W>) -> Option<(W, FlipAssignment)> {
    let (v, t) = chain_dp(
        inst,
        MinVal::Unbounded,
        |v, x, y| v.meet(x + y, cap),
        |p, q| p.better_than(q),
    )?;
    match v {
        MinVal::At(m) => Some((m, t)),
        _ => None,
    }
}

/// Flips maximizing the smallest angle with the child order fixed.
pub fn solve_re2<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    let (_, t) = maxmin_capped(instance, None).expect("uncapped chain is always feasible");
    Solution::evaluate(
        instance,
        CircularOrdering::identity(instance.len()),
        t,
        "flip-dp-re2",
        Guarantee::Optimal,
    )
}

/// Flips minimizing the standard deviation of the angles (through the sum
/// of products, which differs from the variance by constants).
pub fn solve_de2<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    let (_, t) = chain_dp(instance, W::zero(), |v, x, y| v + x * y, |p, q| p < q)
        .expect("sum chain is always feasible");
    Solution::evaluate(
        instance,
        CircularOrdering::identity(instance.len()),
        t,
        "flip-dp-de2",
        Guarantee::Optimal,
    )
}

/// Flips minimizing largest / smallest angle.
///
/// Each of the at most `4n` angles that can occur is tried as the upper
/// bound on all angles; the capped max-min DP then gives the best smallest
/// angle under that cap. The optimal assignment's own largest angle is one
/// of the candidates, so the best ratio found is optimal. `O(n²)`.
pub fn solve_ra2<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    let n = instance.len();
    let mut caps = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        for p in 0..2 {
            for q in 0..2 {
                if n == 1 && p == q {
                    continue;
                }
                caps.push(w(instance, i, p) + w(instance, j, q));
            }
        }
    }
    caps.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    caps.dedup();

    let mut best: Option<(W, W, FlipAssignment)> = None;
    for cap in caps {
        let Some((lo, t)) = maxmin_capped(instance, Some(cap)) else {
            continue;
        };
        let hi = crate::model::metrics::angles_unchecked(
            instance,
            CircularOrdering::identity(n).as_slice(),
            &t,
        )
        .into_iter()
        .fold(lo, |m, a| if a > m { a } else { m });
        let improves = match &best {
            None => true,
            Some((bh, bl, _)) => ratio_less(hi, lo, *bh, *bl),
        };
        if improves {
            best = Some((hi, lo, t));
        }
    }
    let (_, _, t) = best.expect("the largest candidate is always feasible");
    Solution::evaluate(
        instance,
        CircularOrdering::identity(n),
        t,
        "flip-dp-ra2",
        Guarantee::Optimal,
    )
}
