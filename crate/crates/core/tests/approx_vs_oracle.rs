mod common;

use balloon_core::approx::{approx_de, approx_ra, approx_sop, ExchangeGraph};
use balloon_core::bipartite::{BipartiteModel, CostRule, Matching};
use balloon_core::exact::merge_cycles;
use balloon_core::oracle::{brute_force, OracleBudget};
use balloon_core::{Case, Problem, StarInstance};
use common::{random_int_star, random_star, rng};
use rand::seq::SliceRandom;

const CASES: [Case; 3] = [Case::C1, Case::C3, Case::C4];
const EPS: f64 = 1e-9;

fn for_random_f64(seed: u64, per_case: usize, mut f: impl FnMut(&StarInstance<f64>)) {
    let mut r = rng(seed);
    for case in CASES {
        for k in 0..per_case {
            let n = 2 + k % 6;
            f(&random_star(&mut r, n, case));
        }
    }
}

fn for_random_i64(seed: u64, per_case: usize, mut f: impl FnMut(&StarInstance<i64>)) {
    let mut r = rng(seed);
    for case in CASES {
        for k in 0..per_case {
            let n = 2 + k % 6;
            f(&random_int_star(&mut r, n, case, 9));
        }
    }
}

#[test]
fn ra_within_factor_two() {
    let budget = OracleBudget::default();
    for_random_f64(100, 200, |inst| {
        let apx = approx_ra(inst).unwrap();
        let opt = brute_force(inst, Problem::Ra, &budget).unwrap().optimum;
        assert!(
            apx.metrics.asp_ratio <= 2.0 * opt * (1.0 + EPS),
            "{} > 2·{opt} on {inst:?}",
            apx.metrics.asp_ratio
        );
    });
}

#[test]
fn sop_within_factor_two_of_optimum_and_bound() {
    let budget = OracleBudget::default();
    for_random_f64(101, 200, |inst| {
        let out = approx_sop(inst).unwrap();
        let opt = brute_force(inst, Problem::Sop, &budget).unwrap().optimum;
        assert!((out.cost - out.solution.metrics.sop).abs() <= EPS);
        assert!(out.cost <= 2.0 * opt + EPS, "{} > 2·{opt}", out.cost);
        assert!(
            out.cost <= 2.0 * out.lower_bound + EPS,
            "{} > 2·{}",
            out.cost,
            out.lower_bound
        );
    });
    for_random_i64(102, 200, |inst| {
        let out = approx_sop(inst).unwrap();
        let opt = brute_force(inst, Problem::Sop, &budget)
            .unwrap()
            .solution
            .metrics
            .sop;
        assert_eq!(out.cost, out.solution.metrics.sop);
        assert!(
            out.cost <= 2 * opt && out.cost <= 2 * out.lower_bound,
            "{inst:?}"
        );
    });
}

#[test]
fn de_excess_within_factor_n() {
    let budget = OracleBudget::default();
    for_random_f64(103, 200, |inst| {
        let out = approx_de(inst).unwrap();
        let opt = brute_force(inst, Problem::Sop, &budget).unwrap().optimum;
        let n = inst.len() as f64;
        let excess = out.cost - out.default_cost;
        let opt_excess = opt - out.default_cost;
        assert!(
            excess <= n * opt_excess + EPS,
            "{excess} > {n}·{opt_excess} on {inst:?}"
        );
    });
    for_random_i64(104, 200, |inst| {
        let out = approx_de(inst).unwrap();
        let opt = brute_force(inst, Problem::Sop, &budget)
            .unwrap()
            .solution
            .metrics
            .sop;
        let n = inst.len() as i64;
        assert!(
            out.cost - out.default_cost <= n * (opt - out.default_cost),
            "{inst:?}"
        );
    });
}

#[test]
fn lower_bound_chain() {
    let budget = OracleBudget::default();
    for_random_f64(105, 200, |inst| {
        let out = approx_sop(inst).unwrap();
        let model = BipartiteModel::for_instance(inst).unwrap();
        let nd = model.cost(&model.default_matching(), CostRule::Product);
        let opt = brute_force(inst, Problem::Sop, &budget).unwrap().optimum;
        assert!((nd - out.default_cost).abs() <= EPS);
        assert!(out.default_cost <= out.lower_bound + EPS);
        assert!(
            out.lower_bound <= opt + EPS,
            "c_LB {} > opt {opt} on {inst:?}",
            out.lower_bound
        );
    });
    for_random_i64(106, 200, |inst| {
        let out = approx_sop(inst).unwrap();
        let opt = brute_force(inst, Problem::Sop, &budget)
            .unwrap()
            .solution
            .metrics
            .sop;
        assert!(
            out.default_cost <= out.lower_bound && out.lower_bound <= opt,
            "{inst:?}"
        );
    });
}

#[test]
fn emitted_matchings_are_hamiltonian() {
    let check = |model: &BipartiteModel<f64>, m: &Matching| {
        assert!(model.is_bipartite_matching(m));
        let cycles = m.subcycles();
        assert!(cycles.is_hamiltonian());
        assert_eq!(cycles.cycles()[0].len(), 2 * model.n());
    };
    let mut r = rng(107);
    for case in CASES {
        for n in [1, 2, 3, 5, 8, 13, 40, 101] {
            for _ in 0..20 {
                let inst = random_star(&mut r, n, case);
                let model = BipartiteModel::for_instance(&inst).unwrap();
                check(&model, &merge_cycles(&model));
                check(&model, &approx_sop(&inst).unwrap().matching);
                check(&model, &approx_de(&inst).unwrap().matching);
            }
        }
    }
    // Heavy ties.
    let mut r = rng(108);
    for case in CASES {
        for n in 1..30 {
            let inst = random_int_star(&mut r, n, case, 2);
            let model = BipartiteModel::for_instance(&inst).unwrap();
            for m in [
                merge_cycles(&model),
                approx_sop(&inst).unwrap().matching,
                approx_de(&inst).unwrap().matching,
            ] {
                assert!(m.subcycles().is_hamiltonian(), "{inst:?}");
            }
        }
    }
}

#[test]
fn default_matching_is_cheapest() {
    let mut r = rng(109);
    for case in CASES {
        for n in 1..9 {
            let inst = random_star(&mut r, n, case);
            let model = BipartiteModel::for_instance(&inst).unwrap();
            let base = model.default_product_cost();
            let mut smalls = model.small().to_vec();
            for _ in 0..50 {
                smalls.shuffle(&mut r);
                let m = Matching::from_pairs(
                    2 * n,
                    model.big().iter().copied().zip(smalls.iter().copied()),
                )
                .unwrap();
                assert!(base <= model.cost(&m, CostRule::Product) + EPS);
            }
        }
    }
}

#[test]
fn cross_cycle_exchange_costs_psi_and_merges() {
    let mut r = rng(110);
    for case in CASES {
        for n in 2..12 {
            let inst = random_int_star(&mut r, n, case, 20);
            let model = BipartiteModel::for_instance(&inst).unwrap();
            let nd = model.default_matching();
            let before = nd.subcycles();
            let graph = ExchangeGraph::new(&model);
            for mu in 0..n {
                for nu in mu + 1..n {
                    let (bm, sm) = (model.big()[mu], model.small()[mu]);
                    let (bn, sn) = (model.big()[nu], model.small()[nu]);
                    let swapped = nd.exchange((bm, sm), (bn, sn)).unwrap();
                    let delta =
                        model.cost(&swapped, CostRule::Product) - model.default_product_cost();
                    let psi = (model.big_value(mu) - model.big_value(nu))
                        * (model.small_value(nu) - model.small_value(mu));
                    assert_eq!(delta, psi);
                    assert!(psi >= 0);
                    let (cu, cv) = (graph.cycle_of_index(mu), graph.cycle_of_index(nu));
                    if cu != cv {
                        assert_eq!(swapped.subcycles().count(), before.count() - 1);
                        assert!(graph.psi(cu, cv).unwrap().psi <= psi);
                    }
                }
            }
        }
    }
}

#[test]
fn spanning_tree_is_minimum() {
    let mut r = rng(111);
    for case in CASES {
        for n in 2..40 {
            let inst = random_int_star(&mut r, n, case, 15);
            let model = BipartiteModel::for_instance(&inst).unwrap();
            let graph = ExchangeGraph::new(&model);
            let eta = graph.node_count();
            let tree = graph.minimum_spanning_tree();
            assert_eq!(tree.edges.len(), eta - 1);
            // Kruskal over the materialized edges.
            let mut edges = graph.edges();
            assert_eq!(edges.len(), eta * (eta - 1) / 2);
            edges.sort_by_key(|e| (e.witness.psi, e.u, e.v));
            let mut parent: Vec<usize> = (0..eta).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut total = 0;
            for e in &edges {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                if a != b {
                    parent[a] = b;
                    total += e.witness.psi;
                }
            }
            assert_eq!(tree.total(), total, "{inst:?}");
            // The tree spans every cycle.
            let mut parent: Vec<usize> = (0..eta).collect();
            for e in &tree.edges {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                assert_ne!(a, b);
                parent[a] = b;
            }
        }
    }
}

#[test]
fn merge_walk_psi_matches_every_pair() {
    let mut r = rng(112);
    for case in CASES {
        for n in 2..60 {
            let ints = random_int_star(&mut r, n, case, 3);
            let model = BipartiteModel::for_instance(&ints).unwrap();
            let graph = ExchangeGraph::new(&model);
            for u in 0..graph.node_count() {
                for v in 0..graph.node_count() {
                    assert_eq!(
                        graph.psi(u, v),
                        graph.psi_exhaustive(u, v),
                        "{ints:?} {u} {v}"
                    );
                }
            }
            let reals = random_star(&mut r, n, case);
            let model = BipartiteModel::for_instance(&reals).unwrap();
            let graph = ExchangeGraph::new(&model);
            for u in 0..graph.node_count() {
                for v in 0..graph.node_count() {
                    assert_eq!(graph.psi(u, v), graph.psi_exhaustive(u, v));
                }
            }
        }
    }
}
