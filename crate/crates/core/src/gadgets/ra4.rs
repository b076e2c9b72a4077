//! Cyclic two-station workforce leveling as an aspect-ratio star.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Case, CircularOrdering, FlipAssignment, StarInstance, SubWedgePair};
use crate::scalar::{wmax, wsum, RealWeight, Weight};

/// Jobs `J_i = (W_{i1}, W_{i2})` and the workforce range `[LB, UB]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoStationInstance<W> {
    pub jobs: Vec<(W, W)>,
    pub lb: W,
    pub ub: W,
}

impl<W: Weight> TwoStationInstance<W> {
    pub fn new(jobs: Vec<(W, W)>, lb: W, ub: W) -> Result<Self> {
        if jobs.is_empty() {
            return Err(Error::invalid("at least one job is required"));
        }
        if jobs.iter().any(|&(a, b)| {
            a.is_negative()
                || b.is_negative()
                || a.partial_cmp(&a).is_none()
                || b.partial_cmp(&b).is_none()
        }) {
            return Err(Error::invalid("job weights must be nonnegative numbers"));
        }
        if !matches!(lb.partial_cmp(&ub), Some(Ordering::Less | Ordering::Equal)) {
            return Err(Error::invalid("LB must not exceed UB"));
        }
        Ok(TwoStationInstance { jobs, lb, ub })
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// Largest single task weight.
    pub fn w_max(&self) -> W {
        self.jobs
            .iter()
            .fold(W::zero(), |m, &(a, b)| wmax(m, wmax(a, b)))
    }

    /// Workforce in each period when jobs run in the cyclic order `perm`:
    /// job `perm[i]` at the second station next to `perm[i+1]` at the first.
    pub fn requirements(&self, perm: &[usize]) -> Vec<W> {
        let n = perm.len();
        (0..n)
            .map(|i| self.jobs[perm[i]].1 + self.jobs[perm[(i + 1) % n]].0)
            .collect()
    }

    pub fn is_feasible(&self, perm: &[usize]) -> bool {
        self.requirements(perm)
            .iter()
            .all(|&r| r >= self.lb && r <= self.ub)
    }
}

/// A star built from a two-station instance and its angle range.
#[derive(Clone, Debug, PartialEq)]
pub struct Ra4Gadget<W> {
    pub instance: StarInstance<W>,
    /// Smallest allowed angle.
    pub a: W,
    /// Largest allowed angle.
    pub b: W,
    /// Scale applied to the job weights (`1` for the unscaled form).
    pub rho: W,
    pub w_max: W,
}

/// Unscaled gadget: `w0 = W_1`, `w1 = W_2 + W_max`, `[A, B] = [LB, UB] + W_max`.
/// Exact for integer weights; the circle has length `Σ(W_1 + W_2 + W_max)`.
pub fn gen_ra4_units<W: Weight>(tsi: &TwoStationInstance<W>) -> Result<Ra4Gadget<W>> {
    let w_max = tsi.w_max();
    let total = wsum(tsi.jobs.iter().map(|&(a, b)| a + b + w_max));
    if total == W::zero() {
        return Err(Error::Degenerate("all job weights are zero".into()));
    }
    let children = tsi
        .jobs
        .iter()
        .map(|&(a, b)| SubWedgePair::new(a, b + w_max))
        .collect();
    Ok(Ra4Gadget {
        instance: StarInstance::new(children, Case::C4)?,
        a: tsi.lb + w_max,
        b: tsi.ub + w_max,
        rho: W::one(),
        w_max,
    })
}

/// Gadget scaled by `ρ = 2π / Σ(W_1 + W_2 + W_max)` so the sub-wedges fill
/// the circle.
pub fn gen_ra4_from_2slw<W: RealWeight>(tsi: &TwoStationInstance<W>) -> Result<Ra4Gadget<W>> {
    let units = gen_ra4_units(tsi)?;
    let rho = W::tau() / units.instance.total();
    Ok(Ra4Gadget {
        instance: units.instance.scaled(rho),
        a: units.a * rho,
        b: units.b * rho,
        rho,
        w_max: units.w_max,
    })
}

/// Drawing of a job order: children in that order, no flips.
pub fn forward_map(perm: &[usize]) -> Result<(CircularOrdering, FlipAssignment)> {
    let n = perm.len();
    Ok((
        CircularOrdering::new(perm.to_vec())?,
        FlipAssignment::zeros(n),
    ))
}

/// Rewrites a drawing so every angle pairs a `w1` with a `w0`, then reads
/// the job order off it.
///
/// Each round takes the first angle made of two `w0` sub-wedges and the
/// first later angle made of two `w1` sub-wedges, then reverses (and
/// flips) the children in between. Both new boundary angles pair a `w0`
/// with a `w1`, and every other angle keeps its size. When every angle is
/// mixed, either no child is flipped or all are, and in the latter case
/// the order is reversed.
///
/// If all angles of the input lie in `[A, B]`, so do all requirements of
/// the returned order in `[LB, UB]`, because `w1(i) ≥ w0(j)` for all
/// `i, j`.
pub fn back_map(sigma: &CircularOrdering, t: &FlipAssignment) -> Result<Vec<usize>> {
    let n = sigma.len();
    if t.len() != n {
        return Err(Error::invalid("ordering and flip lengths differ"));
    }
    let mut order = sigma.as_slice().to_vec();
    let mut flip: Vec<bool> = order.iter().map(|&c| t.get(c)).collect();
    // Angle after position i is type 00 when the trailing side of i and the
    // leading side of i+1 are both w0: flip[i] && !flip[i+1].
    loop {
        let kind = |flip: &[bool], i: usize| (flip[i], flip[(i + 1) % n]);
        let Some(p) = (0..n).find(|&i| kind(&flip, i) == (true, false)) else {
            break;
        };
        let q = (1..n)
            .map(|d| (p + d) % n)
            .find(|&i| kind(&flip, i) == (false, true))
            .ok_or_else(|| Error::invalid("unbalanced sub-wedge types"))?;
        // Reverse positions p+1 ..= q (cyclically).
        let len = (q + n - p) % n;
        let idx: Vec<usize> = (1..=len).map(|d| (p + d) % n).collect();
        let (o, f): (Vec<usize>, Vec<bool>) =
            idx.iter().rev().map(|&i| (order[i], !flip[i])).unzip();
        for (k, &i) in idx.iter().enumerate() {
            order[i] = o[k];
            flip[i] = f[k];
        }
    }
    if flip.iter().all(|&f| f) && n > 0 {
        order.reverse();
    } else if flip.iter().any(|&f| f) {
        return Err(Error::invalid("mixed flips after normalization"));
    }
    Ok(order)
}
