#![allow(dead_code)]

use balloon_core::{Case, Star, StarInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-wedges uniform in (0, 1], then scaled to a full circle.
pub fn random_star(rng: &mut ChaCha8Rng, n: usize, case: Case) -> Star {
    let draw = |rng: &mut ChaCha8Rng| 1.0 - rng.gen::<f64>();
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let a = draw(rng);
            if case == Case::C1 {
                (a, a)
            } else {
                (a, draw(rng))
            }
        })
        .collect();
    StarInstance::from_pairs(&pairs, case)
        .unwrap()
        .normalize()
        .unwrap()
}

/// Small integer sub-wedges, with many ties.
pub fn random_int_star(rng: &mut ChaCha8Rng, n: usize, case: Case, max: i64) -> StarInstance<i64> {
    let pairs: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=max);
            if case == Case::C1 {
                (a, a)
            } else {
                (a, rng.gen_range(0..=max))
            }
        })
        .collect();
    StarInstance::from_pairs(&pairs, case).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Random recursive tree; `bushy` biases attachment toward recent nodes
/// (deeper trees) when false and toward the first few nodes when true.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, bushy: bool) -> balloon_core::RootedTree {
    let parents: Vec<usize> = (0..n)
        .map(|i| match i {
            0 => 0,
            _ if bushy => rng.gen_range(0..i.min(1 + i / 4)),
            _ => rng.gen_range(i.saturating_sub(5)..i),
        })
        .collect();
    balloon_core::RootedTree::from_parents(&parents).unwrap()
}
