use serde::{Deserialize, Serialize};

use super::star::{CircularOrdering, FlipAssignment, Problem, StarInstance};
use crate::error::{Error, Result};
use crate::scalar::{wmax, wmin, wsum, Weight};

/// The angles around a node and the four aesthetic measures derived from them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport<W> {
    pub angles: Vec<W>,
    pub ang_resl: W,
    /// `max / min`; `f64::INFINITY` when the smallest angle is zero.
    pub asp_ratio: f64,
    /// Set when `asp_ratio` is infinite because some angle is zero.
    pub asp_ratio_unbounded: bool,
    pub std_dev: f64,
    pub sop: W,
}

impl<W: Weight> MetricsReport<W> {
    pub fn max_angle(&self) -> W {
        self.angles.iter().copied().fold(self.ang_resl, wmax)
    }

    /// The value being optimized for `problem` (as `f64`; larger is better
    /// only for [`Problem::Re`]).
    pub fn objective(&self, problem: Problem) -> f64 {
        match problem {
            Problem::Re => self.ang_resl.as_f64(),
            Problem::Ra => self.asp_ratio,
            Problem::De => self.std_dev,
            Problem::Sop => self.sop.as_f64(),
        }
    }
}

fn check_lengths<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &CircularOrdering,
    t: &FlipAssignment,
) -> Result<()> {
    let n = instance.len();
    if sigma.len() != n || t.len() != n {
        return Err(Error::invalid(format!(
            "instance has {n} children but ordering has {} and flips have {} entries",
            sigma.len(),
            t.len()
        )));
    }
    Ok(())
}

/// The sub-wedge of `child` that trails it (met second, counterclockwise).
#[inline]
pub(crate) fn trailing<W: Weight>(inst: &StarInstance<W>, t: &FlipAssignment, child: usize) -> W {
    inst.child(child).side(!t.get(child))
}

/// The sub-wedge of `child` that leads it (met first, counterclockwise).
#[inline]
pub(crate) fn leading<W: Weight>(inst: &StarInstance<W>, t: &FlipAssignment, child: usize) -> W {
    inst.child(child).side(t.get(child))
}

/// Angles between consecutive child edges in counterclockwise order.
///
/// `angles[i]` lies between children `sigma[i]` and `sigma[i+1]` (wrapping),
/// and is the trailing sub-wedge of the first plus the leading sub-wedge of
/// the second.
pub fn angle_sequence<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &CircularOrdering,
    t: &FlipAssignment,
) -> Result<Vec<W>> {
    check_lengths(instance, sigma, t)?;
    Ok(angles_unchecked(instance, sigma.as_slice(), t))
}

pub(crate) fn angles_unchecked<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &[usize],
    t: &FlipAssignment,
) -> Vec<W> {
    let n = sigma.len();
    (0..n)
        .map(|i| {
            let a = sigma[i];
            let b = sigma[(i + 1) % n];
            trailing(instance, t, a) + leading(instance, t, b)
        })
        .collect()
}

/// Sum of products of the two sub-wedges forming each angle.
pub fn sum_of_products<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &CircularOrdering,
    t: &FlipAssignment,
) -> Result<W> {
    check_lengths(instance, sigma, t)?;
    Ok(sop_unchecked(instance, sigma.as_slice(), t))
}

pub(crate) fn sop_unchecked<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &[usize],
    t: &FlipAssignment,
) -> W {
    let n = sigma.len();
    wsum((0..n).map(|i| {
        let a = sigma[i];
        let b = sigma[(i + 1) % n];
        trailing(instance, t, a) * leading(instance, t, b)
    }))
}

/// Population standard deviation of `values`.
pub fn std_dev_of<W: Weight>(values: &[W]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().map(|v| v.as_f64()).sum::<f64>() / n;
    let var = values
        .iter()
        .map(|v| {
            let d = v.as_f64() - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    var.max(0.0).sqrt()
}

/// Standard deviation expressed through the sum of products: with `S` the
/// total of all sub-wedges and `Q` the sum of their squares,
/// `std² = (Q + 2·sop)/n − (S/n)²`.
pub fn std_dev_from_sop<W: Weight>(instance: &StarInstance<W>, sop: W) -> f64 {
    let n = instance.len() as f64;
    let q = instance.sum_of_squares().as_f64();
    let mean = instance.total().as_f64() / n;
    ((q + 2.0 * sop.as_f64()) / n - mean * mean).max(0.0).sqrt()
}

pub fn metrics_from_angles<W: Weight>(angles: Vec<W>, sop: W) -> MetricsReport<W> {
    let first = angles[0];
    let (lo, hi) = angles
        .iter()
        .fold((first, first), |(lo, hi), &a| (wmin(lo, a), wmax(hi, a)));
    let unbounded = lo <= W::zero();
    let asp_ratio = if unbounded {
        f64::INFINITY
    } else {
        hi.as_f64() / lo.as_f64()
    };
    let std_dev = std_dev_of(&angles);
    MetricsReport {
        angles,
        ang_resl: lo,
        asp_ratio,
        asp_ratio_unbounded: unbounded,
        std_dev,
        sop,
    }
}

/// All metrics of the drawing given by `sigma` and `t`.
pub fn compute_metrics<W: Weight>(
    instance: &StarInstance<W>,
    sigma: &CircularOrdering,
    t: &FlipAssignment,
) -> Result<MetricsReport<W>> {
    check_lengths(instance, sigma, t)?;
    let angles = angles_unchecked(instance, sigma.as_slice(), t);
    let sop = sop_unchecked(instance, sigma.as_slice(), t);
    Ok(metrics_from_angles(angles, sop))
}

/// Quality claim attached to a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// Provably optimal for the requested problem.
    Optimal,
    /// Within a constant factor of optimal.
    Approximate { factor: u32 },
    /// Excess over the trivial lower bound within `n` times the optimal excess.
    LinearExcess,
    /// No quality claim (fixed input, layout default).
    None,
}

/// An ordering and flip assignment together with its metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution<W> {
    pub ordering: CircularOrdering,
    pub flips: FlipAssignment,
    pub metrics: MetricsReport<W>,
    pub solver_name: String,
    pub guarantee: Guarantee,
}

impl<W: Weight> Solution<W> {
    pub fn evaluate(
        instance: &StarInstance<W>,
        ordering: CircularOrdering,
        flips: FlipAssignment,
        solver_name: impl Into<String>,
        guarantee: Guarantee,
    ) -> Result<Self> {
        let metrics = compute_metrics(instance, &ordering, &flips)?;
        Ok(Solution {
            ordering,
            flips,
            metrics,
            solver_name: solver_name.into(),
            guarantee,
        })
    }

    /// Recomputes the metrics and compares them to the stored ones.
    pub fn check(&self, instance: &StarInstance<W>, tol: f64) -> Result<()> {
        let fresh = compute_metrics(instance, &self.ordering, &self.flips)?;
        let close =
            |a: f64, b: f64| (a == b) || (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
        let ok = fresh.angles.len() == self.metrics.angles.len()
            && fresh
                .angles
                .iter()
                .zip(&self.metrics.angles)
                .all(|(a, b)| close(a.as_f64(), b.as_f64()))
            && close(fresh.ang_resl.as_f64(), self.metrics.ang_resl.as_f64())
            && close(fresh.asp_ratio, self.metrics.asp_ratio)
            && close(fresh.std_dev, self.metrics.std_dev)
            && close(fresh.sop.as_f64(), self.metrics.sop.as_f64());
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(
                "stored metrics do not match the ordering and flips",
            ))
        }
    }
}
