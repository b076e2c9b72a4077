//! Exhaustive search over orderings and flips for small nodes.
//!
//! The canonical space fixes child 0 in the first position (angles only
//! depend on the circular order). For cases whose flips are free or
//! irrelevant (C1, C4) a drawing and its mirror image have the same
//! metrics, the mirror being the reversed ordering with complemented
//! flips, so only orderings with `σ[1] < σ[n-1]` are visited. C3 keeps
//! both directions because mirroring would change the given flips.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::model::metrics::{angles_unchecked, metrics_from_angles, sop_unchecked};
use crate::model::{
    Case, CircularOrdering, FlipAssignment, Guarantee, Problem, Solution, StarInstance,
};
use crate::scalar::{ratio_less, wmax, wmin, Weight};

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_children: usize,
    pub max_states: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_children: 7,
            max_states: 10_000_000,
        }
    }
}

/// Which part of the search space to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    /// Rotation (and, where valid, reflection) classes only.
    Canonical,
    /// Every permutation (rotations of the fixed order for C2) times every
    /// flip vector the case allows.
    Raw,
}

/// Rearranges into the next permutation in lexicographic order.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

fn flips_free(case: Case) -> bool {
    case.flips_free()
}

/// Number of states visited for `n` children in `case`.
pub fn state_count(n: usize, case: Case, space: SearchSpace) -> u64 {
    let flips = if flips_free(case) {
        1u64 << n.min(63)
    } else {
        1
    };
    let orders = match (case, space) {
        (Case::C2, SearchSpace::Canonical) => 1,
        (Case::C2, SearchSpace::Raw) => n as u64,
        (_, SearchSpace::Raw) => factorial(n),
        (Case::C3, SearchSpace::Canonical) => factorial(n.saturating_sub(1)),
        (_, SearchSpace::Canonical) => {
            if n < 3 {
                1
            } else {
                factorial(n - 1) / 2
            }
        }
    };
    orders.saturating_mul(flips)
}

fn check_budget(n: usize, case: Case, space: SearchSpace, budget: &OracleBudget) -> Result<u64> {
    let states = state_count(n, case, space);
    if n > budget.max_children {
        return Err(Error::OverBudget {
            children: n,
            reason: format!("limit is {} children", budget.max_children),
        });
    }
    if states > budget.max_states {
        return Err(Error::OverBudget {
            children: n,
            reason: format!("{states} states exceed the limit of {}", budget.max_states),
        });
    }
    Ok(states)
}

/// Calls `f` on every state of the search space, in lexicographic order
/// of `(σ, t)`.
pub fn for_each_state<W, F>(instance: &StarInstance<W>, space: SearchSpace, mut f: F)
where
    W: Weight,
    F: FnMut(&[usize], &FlipAssignment) -> ControlFlow<()>,
{
    let n = instance.len();
    let case = instance.case();
    let masks: u64 = if flips_free(case) { 1 << n } else { 1 };
    let mut visit = |sigma: &[usize]| -> ControlFlow<()> {
        for mask in 0..masks {
            f(sigma, &FlipAssignment::from_mask(mask, n))?;
        }
        ControlFlow::Continue(())
    };
    match (case, space) {
        (Case::C2, SearchSpace::Canonical) => {
            let _ = visit(&(0..n).collect::<Vec<_>>());
        }
        (Case::C2, SearchSpace::Raw) => {
            let mut sigma: Vec<usize> = (0..n).collect();
            for _ in 0..n {
                if visit(&sigma).is_break() {
                    return;
                }
                sigma.rotate_left(1);
            }
        }
        (_, SearchSpace::Raw) => {
            let mut sigma: Vec<usize> = (0..n).collect();
            loop {
                if visit(&sigma).is_break() {
                    return;
                }
                if !next_permutation(&mut sigma) {
                    return;
                }
            }
        }
        (_, SearchSpace::Canonical) => {
            let mirror = case != Case::C3;
            let mut sigma: Vec<usize> = (0..n).collect();
            loop {
                if !(mirror && n >= 3 && sigma[1] > sigma[n - 1]) && visit(&sigma).is_break() {
                    return;
                }
                if !next_permutation(&mut sigma[1..]) {
                    return;
                }
            }
        }
    }
}

/// Best objective seen so far, compared exactly in `W`.
#[derive(Clone, Copy, Debug)]
enum Score<W> {
    /// Larger smallest angle is better.
    MinAngle(W),
    /// Smaller `hi / lo` is better.
    Ratio { hi: W, lo: W },
    /// Smaller sum of products is better (also decides the deviation).
    Sop(W),
}

impl<W: Weight> Score<W> {
    fn of(
        problem: Problem,
        instance: &StarInstance<W>,
        sigma: &[usize],
        t: &FlipAssignment,
    ) -> Self {
        match problem {
            Problem::Re | Problem::Ra => {
                let angles = angles_unchecked(instance, sigma, t);
                let lo = angles.iter().copied().fold(angles[0], wmin);
                if problem == Problem::Re {
                    Score::MinAngle(lo)
                } else {
                    let hi = angles.iter().copied().fold(angles[0], wmax);
                    Score::Ratio { hi, lo }
                }
            }
            Problem::De | Problem::Sop => Score::Sop(sop_unchecked(instance, sigma, t)),
        }
    }

    fn better_than(&self, other: &Self) -> bool {
        match (self, other) {
            (Score::MinAngle(a), Score::MinAngle(b)) => a > b,
            (Score::Ratio { hi: h1, lo: l1 }, Score::Ratio { hi: h2, lo: l2 }) => {
                ratio_less(*h1, *l1, *h2, *l2)
            }
            (Score::Sop(a), Score::Sop(b)) => a < b,
            _ => false,
        }
    }
}

/// An exhaustive optimum.
#[derive(Clone, Debug)]
pub struct OracleResult<W> {
    pub solution: Solution<W>,
    /// The optimal objective value (smallest angle, ratio, deviation or
    /// sum of products).
    pub optimum: f64,
    pub states: u64,
}

/// Exact optimum by enumeration of the canonical space. Ties go to the
/// lexicographically smallest `(σ, t)` with `σ[0] = 0`.
pub fn brute_force<W: Weight>(
    instance: &StarInstance<W>,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<OracleResult<W>> {
    search(instance, problem, budget, SearchSpace::Canonical)
}

/// Same as [`brute_force`] over the raw, unreduced space.
pub fn brute_force_raw<W: Weight>(
    instance: &StarInstance<W>,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<OracleResult<W>> {
    search(instance, problem, budget, SearchSpace::Raw)
}

fn search<W: Weight>(
    instance: &StarInstance<W>,
    problem: Problem,
    budget: &OracleBudget,
    space: SearchSpace,
) -> Result<OracleResult<W>> {
    let states = check_budget(instance.len(), instance.case(), space, budget)?;
    let mut best: Option<(Score<W>, Vec<usize>, FlipAssignment)> = None;
    for_each_state(instance, space, |sigma, t| {
        let s = Score::of(problem, instance, sigma, t);
        if best.as_ref().is_none_or(|(b, _, _)| s.better_than(b)) {
            best = Some((s, sigma.to_vec(), t.clone()));
        }
        ControlFlow::Continue(())
    });
    let (_, sigma, t) = best.expect("search space is never empty");
    let solution = Solution::evaluate(
        instance,
        CircularOrdering::new(sigma)?,
        t,
        "oracle",
        Guarantee::Optimal,
    )?;
    let optimum = solution.metrics.objective(problem);
    Ok(OracleResult {
        solution,
        optimum,
        states,
    })
}

/// Constraint for [`decide`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound<W> {
    /// Every angle within `[lo, hi]`.
    AngleRange { lo: W, hi: W },
    /// Sum of products at most the given value.
    SopAtMost(W),
}

/// Outcome of [`decide`]; a witness accompanies every yes.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub feasible: bool,
    pub witness: Option<(CircularOrdering, FlipAssignment)>,
}

/// Whether some drawing meets `bound`; the first witness in lexicographic
/// order is returned.
pub fn decide<W: Weight>(
    instance: &StarInstance<W>,
    bound: Bound<W>,
    budget: &OracleBudget,
) -> Result<Decision> {
    check_budget(
        instance.len(),
        instance.case(),
        SearchSpace::Canonical,
        budget,
    )?;
    let mut witness = None;
    for_each_state(instance, SearchSpace::Canonical, |sigma, t| {
        let ok = match bound {
            Bound::AngleRange { lo, hi } => angles_unchecked(instance, sigma, t)
                .iter()
                .all(|&a| a >= lo && a <= hi),
            Bound::SopAtMost(ub) => sop_unchecked(instance, sigma, t) <= ub,
        };
        if ok {
            witness = Some((sigma.to_vec(), t.clone()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(match witness {
        Some((s, t)) => Decision {
            feasible: true,
            witness: Some((CircularOrdering::new(s)?, t)),
        },
        None => Decision {
            feasible: false,
            witness: None,
        },
    })
}

/// Metrics of every canonical state, for statistics in tests.
pub fn all_metrics<W: Weight>(
    instance: &StarInstance<W>,
    budget: &OracleBudget,
) -> Result<Vec<crate::model::MetricsReport<W>>> {
    check_budget(
        instance.len(),
        instance.case(),
        SearchSpace::Canonical,
        budget,
    )?;
    let mut out = Vec::new();
    for_each_state(instance, SearchSpace::Canonical, |sigma, t| {
        out.push(metrics_from_angles(
            angles_unchecked(instance, sigma, t),
            sop_unchecked(instance, sigma, t),
        ));
        ControlFlow::Continue(())
    });
    Ok(out)
}
