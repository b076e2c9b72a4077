mod common;

use std::f64::consts::{PI, TAU};

use balloon_core::layout::{
    drawn_angles, fractal_layout, inner_radius, optimize_tree, realize, shrink_to_uneven,
    sns_layout, Drawing, FractalParams, Point, SnsOptions,
};
use balloon_core::oracle::OracleBudget;
use balloon_core::solve::SolverChoice;
use balloon_core::{Case, Error, Problem, RootedTree, StarInstance};
use common::{random_tree, rng};
use rand::Rng;

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let orient =
        |p: Point, q: Point, r: Point| (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    let eps = 1e-12;
    o1 * o2 < -eps && o3 * o4 < -eps
}

fn crossings(tree: &RootedTree, drawing: &Drawing) -> usize {
    let edges: Vec<(usize, usize)> = (0..tree.len())
        .filter_map(|v| tree.parent(v).map(|p| (p, v)))
        .collect();
    let pos = |i: usize| drawing.nodes[i].position;
    let mut count = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if [a, b].contains(&c) || [a, b].contains(&d) {
                continue;
            }
            if segments_cross(pos(a), pos(b), pos(c), pos(d)) {
                count += 1;
            }
        }
    }
    count
}

fn sns_drawing(tree: &RootedTree) -> Drawing {
    let sns = sns_layout(tree, &SnsOptions::default()).unwrap();
    realize(
        tree,
        &sns.stars,
        &sns.radii,
        &sns.default_solutions().unwrap(),
    )
    .unwrap()
}

#[test]
fn sns_angles_sum_to_full_circle_and_siblings_are_disjoint() {
    let mut r = rng(300);
    for k in 0..100 {
        let n = r.gen_range(1..=500);
        let tree = random_tree(&mut r, n, k % 2 == 0);
        let drawing = sns_drawing(&tree);
        for v in 0..tree.len() {
            let kids = tree.children(v);
            if kids.is_empty() {
                continue;
            }
            let sum: f64 = drawn_angles(&tree, &drawing, v).iter().sum();
            assert!((sum - TAU).abs() < 1e-9);
            for (i, &a) in kids.iter().enumerate() {
                let pa = drawing.nodes[a];
                let r = drawing.nodes[v].inner_radius;
                let p = drawing.nodes[v].position;
                let scale = r + p.x.abs() + p.y.abs();
                assert!((pa.position.distance(p) - r).abs() <= 1e-9 * scale);
                for &b in &kids[i + 1..] {
                    let pb = drawing.nodes[b];
                    let gap = pa.position.distance(pb.position) - pa.outer_radius - pb.outer_radius;
                    assert!(
                        gap >= -1e-9 * scale.max(1.0),
                        "siblings {a}, {b} overlap by {gap}"
                    );
                }
            }
        }
    }
}

#[test]
fn sns_drawings_have_no_crossings() {
    let mut r = rng(301);
    for k in 0..20 {
        let tree = random_tree(&mut r, 150, k % 2 == 0);
        assert_eq!(crossings(&tree, &sns_drawing(&tree)), 0);
    }
}

#[test]
fn equal_leaves_get_equal_angles() {
    for k in 1..12 {
        let tree = RootedTree::star(k);
        let drawing = sns_drawing(&tree);
        for a in drawn_angles(&tree, &drawing, tree.root()) {
            assert!((a - TAU / k as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn three_children_hand_computation() {
    // Outer radii 1, 1, 2: r = 2, half-widths π/6, π/6, π/2, slack π/9.
    let tree = RootedTree::from_parents(&[0, 0, 0, 0, 3, 3]).unwrap();
    let sns = sns_layout(&tree, &SnsOptions::default()).unwrap();
    let c = tree.children(0);
    let outer: Vec<f64> = c.iter().map(|&i| sns.radii[i].outer).collect();
    let r3 = inner_radius(&[1.0, 1.0]);
    assert!((outer[2] - (r3 + 1.0)).abs() < 1e-12);
    // With the third child's actual outer radius R: r = max(ΣR/π, R), etc.
    let big = outer[2];
    let r = sns.radii[0].inner;
    assert!((r - big.max((2.0 + big) / PI)).abs() < 1e-12 || r > big);
    let drawing = realize(
        &tree,
        &sns.stars,
        &sns.radii,
        &sns.default_solutions().unwrap(),
    )
    .unwrap();
    let sum: f64 = drawn_angles(&tree, &drawing, 0).iter().sum();
    assert!((sum - TAU).abs() < 1e-12);

    // The pure (1, 1, 2) case.
    assert_eq!(inner_radius(&[1.0, 1.0, 2.0]), 2.0);
    let star = sns_star_for(&[1.0, 1.0, 2.0]);
    let want = [
        PI / 6.0 + PI / 18.0,
        PI / 6.0 + PI / 18.0,
        PI / 2.0 + PI / 18.0,
    ];
    for (c, w) in star.children().iter().zip(want) {
        assert!((c.w0 - w).abs() < 1e-12 && c.w1 == c.w0);
    }
}

fn sns_star_for(outer: &[f64]) -> StarInstance<f64> {
    let r = inner_radius(outer);
    let halves: Vec<f64> = outer.iter().map(|&o| (o / r).asin()).collect();
    let slack = (TAU - 2.0 * halves.iter().sum::<f64>()) / outer.len() as f64;
    StarInstance::from_pairs(
        &halves
            .iter()
            .map(|&h| (h + slack / 2.0, h + slack / 2.0))
            .collect::<Vec<_>>(),
        Case::C1,
    )
    .unwrap()
}

#[test]
fn single_edge_and_four_star() {
    let tree = RootedTree::star(1);
    let d = sns_drawing(&tree);
    let child = d.nodes[tree.children(0)[0]].position;
    assert!((child.y).abs() < 1e-15 && child.x > 0.0);
    let tree = RootedTree::star(4);
    let d = sns_drawing(&tree);
    for (j, &c) in tree.children(0).iter().enumerate() {
        let p = d.nodes[c].position;
        let ang = p.y.atan2(p.x).rem_euclid(TAU);
        assert!((ang - j as f64 * PI / 2.0).abs() < 1e-12);
    }
}

#[test]
fn fractal_edges_are_equal_per_depth() {
    let mut r = rng(302);
    for k in 0..100 {
        let n = r.gen_range(1..=500);
        let tree = random_tree(&mut r, n, k % 2 == 0);
        let params = FractalParams {
            gamma: r.gen_range(0.1..0.9),
            root_radius: 1.0,
        };
        let d = fractal_layout(&tree, &params).unwrap();
        let depths = tree.depths();
        let mut per_depth = std::collections::HashMap::new();
        for (v, &depth) in depths.iter().enumerate() {
            if let Some(p) = tree.parent(v) {
                let len = d.nodes[v].edge_length;
                let prev = per_depth.entry(depth).or_insert(len);
                assert_eq!(*prev, len);
                assert!((d.nodes[v].position.distance(d.nodes[p].position) - len).abs() < 1e-12);
                assert!(
                    (len - params.gamma.powi(depth as i32)).abs() <= 1e-15 * len.max(1e-300) * 64.0
                );
            }
        }
    }
}

#[test]
fn fractal_examples() {
    let path = RootedTree::from_parents(&[0, 0, 1, 2]).unwrap();
    let p = FractalParams {
        gamma: 0.5,
        root_radius: 1.0,
    };
    let d = fractal_layout(&path, &p).unwrap();
    assert_eq!(d.nodes[2].edge_length, 0.25);
    let binary = RootedTree::from_parents(&[0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6]).unwrap();
    let d = fractal_layout(
        &binary,
        &FractalParams {
            gamma: 0.4,
            root_radius: 1.0,
        },
    )
    .unwrap();
    for v in 7..15 {
        assert!((d.nodes[v].edge_length - 0.064).abs() < 1e-15);
    }
    assert!(fractal_layout(
        &path,
        &FractalParams {
            gamma: 1.0,
            root_radius: 1.0
        }
    )
    .is_err());
}

#[test]
fn shrink_never_grows() {
    let star = StarInstance::from_pairs(&[(1.0, 1.0), (2.0, 2.0)], Case::C1).unwrap();
    let s = shrink_to_uneven(&star, &[(0.5, 3.0), (-1.0, 1.5)]).unwrap();
    let got: Vec<(f64, f64)> = s.children().iter().map(|c| (c.w0, c.w1)).collect();
    assert_eq!(got, vec![(0.5, 1.0), (0.0, 1.5)]);
    assert_eq!(s.case(), Case::C4);
    let same = shrink_to_uneven(&star, &[(1.0, 1.0), (2.0, 2.0)]).unwrap();
    assert_eq!(same.children(), star.children());
}

#[test]
fn optimized_drawings_are_crossing_free() {
    let mut r = rng(303);
    for k in 0..12 {
        let tree = random_tree(&mut r, 120, k % 2 == 0);
        for case in Case::ALL {
            for problem in [Problem::Re, Problem::Ra, Problem::De] {
                let opt = optimize_tree(
                    &tree,
                    problem,
                    case,
                    SolverChoice::Auto,
                    &OracleBudget::default(),
                    &SnsOptions::default(),
                )
                .unwrap();
                assert_eq!(crossings(&tree, &opt.drawing), 0, "{case} {problem:?}");
                for res in &opt.results {
                    let sum: f64 = drawn_angles(&tree, &opt.drawing, res.node).iter().sum();
                    assert!((sum - TAU).abs() < 1e-9);
                    // Reported angles are the drawn ones.
                    let mut drawn = drawn_angles(&tree, &opt.drawing, res.node);
                    let mut reported = res.solved.solution.metrics.angles.clone();
                    drawn.sort_by(f64::total_cmp);
                    reported.sort_by(f64::total_cmp);
                    for (a, b) in drawn.iter().zip(&reported) {
                        assert!((a - b).abs() < 1e-6, "{drawn:?} vs {reported:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn uneven_cases_shrink_sub_wedges() {
    let mut r = rng(304);
    let tree = random_tree(&mut r, 200, true);
    let sns = sns_layout(&tree, &SnsOptions::default()).unwrap();
    let opt = optimize_tree(
        &tree,
        Problem::Re,
        Case::C4,
        SolverChoice::Auto,
        &OracleBudget::default(),
        &SnsOptions::default(),
    )
    .unwrap();
    let mut uneven = 0;
    for res in &opt.results {
        let even = sns.stars[res.node].as_ref().unwrap();
        if !res.star.is_even() {
            uneven += 1;
        }
        assert!(res.star.is_normalized());
        assert_eq!(res.star.len(), even.len());
    }
    assert!(uneven > 0);
}

#[test]
fn missing_solution_names_the_node() {
    let tree = RootedTree::star(3);
    let sns = sns_layout(&tree, &SnsOptions::default()).unwrap();
    let err = realize(&tree, &sns.stars, &sns.radii, &vec![None; tree.len()]).unwrap_err();
    assert!(matches!(err, Error::MissingSolution { ref node } if node == "r"));
}
