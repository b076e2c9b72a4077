mod common;

use balloon_core::io::{
    emit_report, parse_report, parse_star, parse_tree, serialize_compact, serialize_json,
    serialize_star, ReportRecord, StarDocument, Units,
};
use balloon_core::oracle::{brute_force, brute_force_raw, OracleBudget};
use balloon_core::solve::{solve, SolverChoice};
use balloon_core::{
    compute_metrics, Case, CircularOrdering, FlipAssignment, Problem, RootedTree, StarInstance,
};
use common::{close, random_star, rng};
use proptest::prelude::*;
use std::time::Duration;

/// An integer star with an ordering and flips.
fn drawing() -> impl Strategy<Value = (StarInstance<i64>, CircularOrdering, FlipAssignment)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            prop::collection::vec((0i64..50, 0i64..50), n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(pairs, sigma, bits)| {
                (
                    StarInstance::from_pairs(&pairs, Case::C4).unwrap(),
                    CircularOrdering::new(sigma).unwrap(),
                    FlipAssignment::new(bits),
                )
            })
    })
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

proptest! {
    #[test]
    fn rotation_rotates_the_angles((star, sigma, t) in drawing(), k in 0usize..8) {
        let n = star.len();
        let first = sigma.at(k % n);
        let m = compute_metrics(&star, &sigma, &t).unwrap();
        let r = compute_metrics(&star, &sigma.rotated_to(first), &t).unwrap();
        let mut expect = m.angles.clone();
        expect.rotate_left(k % n);
        prop_assert_eq!(&r.angles, &expect);
        prop_assert_eq!(r.ang_resl, m.ang_resl);
        prop_assert_eq!(r.sop, m.sop);
        prop_assert_eq!(r.asp_ratio, m.asp_ratio);
        prop_assert!((r.std_dev - m.std_dev).abs() <= 1e-9 * (1.0 + m.std_dev));
    }

    #[test]
    fn mirror_image_keeps_the_measures((star, sigma, t) in drawing()) {
        let m = compute_metrics(&star, &sigma, &t).unwrap();
        let r = compute_metrics(&star, &sigma.reflected(), &t.complemented()).unwrap();
        prop_assert_eq!(sorted(r.angles.clone()), sorted(m.angles.clone()));
        prop_assert_eq!(r.ang_resl, m.ang_resl);
        prop_assert_eq!(r.sop, m.sop);
        prop_assert_eq!(r.asp_ratio, m.asp_ratio);
        prop_assert!((r.std_dev - m.std_dev).abs() <= 1e-9 * (1.0 + m.std_dev));
    }

    #[test]
    fn scaling_scales_angles_and_not_ratios((star, sigma, t) in drawing(), c in 1i64..7) {
        let m = compute_metrics(&star, &sigma, &t).unwrap();
        let s = compute_metrics(&star.scaled(c), &sigma, &t).unwrap();
        prop_assert_eq!(&s.angles, &m.angles.iter().map(|a| a * c).collect::<Vec<_>>());
        prop_assert_eq!(s.ang_resl, m.ang_resl * c);
        prop_assert_eq!(s.sop, m.sop * c * c);
        prop_assert_eq!(s.asp_ratio_unbounded, m.asp_ratio_unbounded);
        if !m.asp_ratio_unbounded {
            prop_assert!((s.asp_ratio - m.asp_ratio).abs() <= 1e-12 * m.asp_ratio);
        }
        prop_assert!((s.std_dev - c as f64 * m.std_dev).abs() <= 1e-9 * (1.0 + s.std_dev));
    }

    #[test]
    fn angles_sum_to_the_total((star, sigma, t) in drawing()) {
        let m = compute_metrics(&star, &sigma, &t).unwrap();
        prop_assert_eq!(m.angles.iter().sum::<i64>(), star.total());
    }

    #[test]
    fn trees_round_trip(parents in prop::collection::vec(any::<prop::sample::Index>(), 0..120)) {
        let parents: Vec<usize> = std::iter::once(0)
            .chain(parents.iter().enumerate().map(|(i, p)| p.index(i + 1)))
            .collect();
        let tree = RootedTree::from_parents(&parents).unwrap();
        prop_assert_eq!(&parse_tree(&serialize_compact(&tree)).unwrap(), &tree);
        prop_assert_eq!(&parse_tree(&serialize_json(&tree)).unwrap(), &tree);
        let mut other = parents.clone();
        if other.len() > 2 {
            other[2] = 1 - other[2].min(1);
            prop_assert_ne!(&RootedTree::from_parents(&other).unwrap(), &tree);
        }
    }

    #[test]
    fn star_documents_round_trip(
        pairs in prop::collection::vec((0.0f64..1e6, 0.0f64..1e6), 1..20),
        c in 0usize..4,
    ) {
        let case = [Case::C1, Case::C2, Case::C3, Case::C4][c];
        let pairs: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| if case == Case::C1 { (a, a) } else { (a, b) }).collect();
        let star = StarInstance::from_pairs(&pairs, case).unwrap();
        let doc = StarDocument::from_star(&star, Units::Abstract, None);
        let (back, doc2) = parse_star(&serialize_star(&doc)).unwrap();
        prop_assert_eq!(back, star);
        prop_assert_eq!(doc2, doc);
    }
}

/// Raw and canonical searches must reach the same optimum: the canonical
/// space drops only rotations and mirror images.
#[test]
fn oracle_raw_and_canonical_agree() {
    let mut r = rng(900);
    let budget = OracleBudget::default();
    for case in Case::ALL {
        for problem in Problem::ALL {
            for k in 0..40 {
                let n = 1 + k % 6;
                let star = random_star(&mut r, n, case);
                let a = brute_force(&star, problem, &budget).unwrap();
                let b = brute_force_raw(&star, problem, &budget).unwrap();
                assert!(
                    close(a.optimum, b.optimum, 1e-9),
                    "{case} {problem:?} n={n}: {} vs {}",
                    a.optimum,
                    b.optimum
                );
                assert!(a.states <= b.states);
            }
        }
    }
}

#[test]
fn reports_round_trip() {
    let mut r = rng(901);
    let budget = OracleBudget::default();
    let mut records = Vec::new();
    for (k, case) in Case::ALL.into_iter().enumerate() {
        for problem in Problem::ALL {
            let star = random_star(&mut r, 3 + k, case);
            let solved = solve(&star, problem, SolverChoice::Auto, &budget).unwrap();
            records.push(ReportRecord::new(
                format!("n{k}"),
                case,
                problem,
                &solved,
                Units::Rad,
                Duration::from_nanos(12_345 * k as u64),
            ));
        }
    }
    let text = emit_report(&records);
    let back = parse_report(&text).unwrap();
    assert_eq!(back, records);
    assert_eq!(emit_report(&back), text);
}
