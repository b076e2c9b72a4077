mod common;

use balloon_core::exact::{solve_de1, solve_de2, solve_ra2, solve_re2, solve_re3_re4};
use balloon_core::oracle::{brute_force, OracleBudget};
use balloon_core::{Case, Problem, Solution, StarInstance};
use common::{close, random_int_star, random_star, rng};

type Solver<W> = fn(&StarInstance<W>) -> balloon_core::Result<Solution<W>>;

fn agree_f64(case: Case, problem: Problem, solver: Solver<f64>, seed: u64) {
    let budget = OracleBudget::default();
    let mut r = rng(seed);
    for n in 1..=7 {
        for _ in 0..40 {
            let inst = random_star(&mut r, n, case);
            let got = solver(&inst).unwrap();
            got.check(&inst, 1e-12).unwrap();
            let want = brute_force(&inst, problem, &budget).unwrap();
            let g = got.metrics.objective(problem);
            assert!(
                close(g, want.optimum, 1e-9),
                "{case:?} {problem:?} n={n}: {g} vs {} on {inst:?}",
                want.optimum
            );
        }
    }
}

fn agree_int(case: Case, problem: Problem, solver: Solver<i64>, seed: u64) {
    let budget = OracleBudget::default();
    let mut r = rng(seed);
    for n in 1..=7 {
        for _ in 0..40 {
            let inst = random_int_star(&mut r, n, case, 6);
            let got = solver(&inst).unwrap();
            let want = brute_force(&inst, problem, &budget).unwrap();
            let g = got.metrics.objective(problem);
            assert_eq!(g, want.optimum, "{case:?} {problem:?} n={n} on {inst:?}");
        }
    }
}

#[test]
fn de1_matches_oracle() {
    agree_f64(Case::C1, Problem::De, solve_de1, 1);
    agree_int(Case::C1, Problem::Sop, solve_de1, 2);
}

#[test]
fn c2_dps_match_oracle() {
    agree_f64(Case::C2, Problem::Re, solve_re2, 3);
    agree_f64(Case::C2, Problem::Ra, solve_ra2, 4);
    agree_f64(Case::C2, Problem::De, solve_de2, 5);
    agree_int(Case::C2, Problem::Re, solve_re2, 6);
    agree_int(Case::C2, Problem::Sop, solve_de2, 7);
}

#[test]
fn merge_algorithm_matches_oracle() {
    for (i, case) in [Case::C1, Case::C3, Case::C4].into_iter().enumerate() {
        agree_f64(case, Problem::Re, solve_re3_re4, 10 + i as u64);
        agree_int(case, Problem::Re, solve_re3_re4, 20 + i as u64);
    }
}
