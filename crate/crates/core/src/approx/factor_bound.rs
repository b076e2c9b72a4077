//! Lower bound on the cost of a cyclic permutation of sorted products.

use crate::error::{Error, Result};
use crate::scalar::{wsum, Weight};

/// Cost of a permutation and the lower bounds derived for it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorBound<W> {
    /// `Σ x_i y_{ρ(i)}`.
    pub cost: W,
    /// `Σ x_i y_i`.
    pub base: W,
    /// `base + Σ_{i<n} (x_i − x_{i+1})(y_{i+1} − y_i)` when `ρ` is a single
    /// cycle, otherwise `base`.
    pub bound: W,
    /// `bound + n − 2`, present when `ρ` is a single cycle and the gap
    /// condition holds.
    pub strong_bound: Option<W>,
}

/// Whether `perm` consists of one cycle through all of `0..n` (`n ≥ 2`).
pub fn is_full_cycle(perm: &[usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut x = 0;
    for step in 1..=n {
        x = perm[x];
        if x == 0 {
            return step == n;
        }
    }
    false
}

/// Checks the integer gap condition: for every `q` in `2..n` and all
/// `j, j' < q` other than `j = j' = q − 1`,
/// `(x_j − x_q)(y_q − y_{j'}) − (x_{q−1} − x_q)(y_q − y_{q−1}) ≥ 1`.
///
/// Removing `q` from a cycle on `0..=q` shortcuts its two neighbours
/// `j = ρ⁻¹(q)` and `j' = ρ(q)`; either may be `q − 1`, so that index is
/// included.
pub fn gap_condition<W: Weight>(x: &[W], y: &[W]) -> bool {
    let n = x.len();
    for k in 1..n.saturating_sub(1) {
        let next = k + 1;
        let base = (x[k] - x[next]) * (y[next] - y[k]);
        for j in 0..=k {
            for jp in 0..=k {
                if j == k && jp == k {
                    continue;
                }
                if (x[j] - x[next]) * (y[next] - y[jp]) - base < W::one() {
                    return false;
                }
            }
        }
    }
    true
}

/// Evaluates the cyclic-permutation bound.
///
/// `x` must be nonincreasing and `y` nondecreasing (the `i`-th largest and
/// `i`-th smallest values); `perm[i]` is the `y` index paired with `x_i`.
pub fn factor_bound<W: Weight>(x: &[W], y: &[W], perm: &[usize]) -> Result<FactorBound<W>> {
    let n = x.len();
    if y.len() != n || perm.len() != n {
        return Err(Error::invalid(
            "x, y and the permutation must have equal length",
        ));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::invalid("not a permutation"));
        }
    }
    if x.windows(2).any(|w| w[0] < w[1]) || y.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid(
            "x must be nonincreasing and y nondecreasing",
        ));
    }
    let cost = wsum((0..n).map(|i| x[i] * y[perm[i]]));
    let base = wsum((0..n).map(|i| x[i] * y[i]));
    if !is_full_cycle(perm) {
        return Ok(FactorBound {
            cost,
            base,
            bound: base,
            strong_bound: None,
        });
    }
    let bound = base + wsum((0..n - 1).map(|i| (x[i] - x[i + 1]) * (y[i + 1] - y[i])));
    let strong_bound = if gap_condition(x, y) {
        let extra = (2..n).fold(W::zero(), |acc, _| acc + W::one());
        Some(bound + extra)
    } else {
        None
    };
    Ok(FactorBound {
        cost,
        base,
        bound,
        strong_bound,
    })
}

#[cfg(test)]
#[allow(clippy::identity_op)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_is_tight() {
        let b = factor_bound(&[9, 4], &[1, 3], &[1, 0]).unwrap();
        assert_eq!(b.cost, 9 * 3 + 4 * 1);
        assert_eq!(b.bound, 9 + 12 + (9 - 4) * (3 - 1));
        assert_eq!(b.cost, b.bound);
        assert_eq!(b.strong_bound, Some(b.bound));
    }

    #[test]
    fn trivial_factor_gives_base() {
        let b = factor_bound(&[5, 2, 1], &[1, 2, 3], &[0, 1, 2]).unwrap();
        assert_eq!(b.bound, b.base);
        assert!(b.strong_bound.is_none());
    }

    #[test]
    fn cycle_detection() {
        assert!(is_full_cycle(&[1, 2, 0]));
        assert!(!is_full_cycle(&[1, 0, 2]));
        assert!(!is_full_cycle(&[0]));
    }
}
