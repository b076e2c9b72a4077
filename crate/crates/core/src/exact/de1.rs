//! Zigzag ordering minimizing the angle deviation for even sub-wedges.

use crate::error::{Error, Result};
use crate::model::{Case, CircularOrdering, FlipAssignment, Guarantee, Solution, StarInstance};
use crate::scalar::Weight;

/// Children sorted by wedge size ascending (ties by child index).
pub fn sorted_by_wedge<W: Weight>(instance: &StarInstance<W>) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..instance.len()).collect();
    idx.sort_by(|&a, &b| {
        let (x, y) = (instance.child(a).total(), instance.child(b).total());
        x.partial_cmp(&y)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    idx
}

/// The zigzag pattern over sorted ranks.
///
/// With `m_j` the j-th smallest and `M_j` the j-th largest wedge, the
/// sequence is `M_1, m_2, M_3, m_4, …` up to index `k = ⌊n/2⌋`, then the
/// median (odd `n` only), then back down with the roles swapped:
/// `…, M_4, m_3, M_2, m_1`. Reading it as a circle, every prefix of the
/// form `m_j … M_j` (or `M_j … m_j`) is a contiguous nested block around
/// the adjacent pair `m_1 M_1`.
pub fn zigzag_ranks(n: usize) -> Vec<usize> {
    let k = n / 2;
    let small = |j: usize| j - 1;
    let large = |j: usize| n - j;
    let mut out = Vec::with_capacity(n);
    for j in 1..=k {
        out.push(if j % 2 == 1 { large(j) } else { small(j) });
    }
    if n % 2 == 1 {
        out.push(k);
    }
    for j in (1..=k).rev() {
        out.push(if j % 2 == 1 { small(j) } else { large(j) });
    }
    out
}

/// Optimal standard deviation for an unordered node with even sub-wedges.
pub fn solve_de1<W: Weight>(instance: &StarInstance<W>) -> Result<Solution<W>> {
    if !instance.is_even() {
        return Err(Error::invalid(
            "the zigzag ordering requires even sub-wedges",
        ));
    }
    let n = instance.len();
    let sorted = sorted_by_wedge(instance);
    let order = zigzag_ranks(n).into_iter().map(|r| sorted[r]).collect();
    let instance_c1;
    let inst = if instance.case() == Case::C1 {
        instance
    } else {
        instance_c1 = instance.with_case(Case::C1)?;
        &instance_c1
    };
    Solution::evaluate(
        inst,
        CircularOrdering::new(order)?,
        FlipAssignment::zeros(n),
        "zigzag-de1",
        Guarantee::Optimal,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_for_small_n() {
        // ranks: 0 = m_1, n-1 = M_1
        assert_eq!(zigzag_ranks(1), vec![0]);
        assert_eq!(zigzag_ranks(2), vec![1, 0]);
        assert_eq!(zigzag_ranks(3), vec![2, 1, 0]);
        assert_eq!(zigzag_ranks(4), vec![3, 1, 2, 0]);
        // M1 m2 M3 | mid | m3 M2 m1
        assert_eq!(zigzag_ranks(7), vec![6, 1, 4, 3, 2, 5, 0]);
        // M1 m2 M3 m4 | M4 m3 M2 m1
        assert_eq!(zigzag_ranks(8), vec![7, 1, 5, 3, 4, 2, 6, 0]);
    }

    #[test]
    fn four_wedges() {
        let inst = StarInstance::even_from_wedges(&[2.0, 4.0, 6.0, 8.0]).unwrap();
        let s = solve_de1(&inst).unwrap();
        assert_eq!(s.ordering.as_slice(), &[3, 1, 2, 0]);
        assert_eq!(s.metrics.angles, vec![6.0, 5.0, 4.0, 5.0]);
        assert!((s.metrics.std_dev - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn equal_wedges_have_zero_deviation() {
        let inst = StarInstance::even_from_wedges(&[1.5; 6]).unwrap();
        assert_eq!(solve_de1(&inst).unwrap().metrics.std_dev, 0.0);
    }

    #[test]
    fn rejects_uneven() {
        let inst = StarInstance::from_pairs(&[(1.0, 2.0), (1.0, 1.0)], Case::C4).unwrap();
        assert!(solve_de1(&inst).is_err());
    }
}
