//! Solver selection by case and problem.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx::{approx_de, approx_ra, approx_sop};
use crate::error::{Error, Result};
use crate::exact::{solve_de1, solve_de2, solve_ra2, solve_re2, solve_re3_re4};
use crate::model::{Case, Problem, Solution, StarInstance};
use crate::oracle::{brute_force, state_count, OracleBudget, SearchSpace};
use crate::scalar::Weight;

/// Which family of algorithms to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    /// Polynomial exact algorithm, or exhaustive search within budget where
    /// the problem is intractable.
    Exact,
    /// Approximation; falls back to the exact algorithm where one is
    /// polynomial.
    Approx,
    /// Exhaustive search only.
    Oracle,
    /// Exact when polynomial, otherwise exhaustive search within budget and
    /// the approximation beyond it.
    Auto,
}

impl FromStr for SolverChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(SolverChoice::Exact),
            "approx" => Ok(SolverChoice::Approx),
            "oracle" => Ok(SolverChoice::Oracle),
            "auto" => Ok(SolverChoice::Auto),
            _ => Err(Error::invalid(format!(
                "unknown solver '{s}' (expected exact, approx, oracle or auto)"
            ))),
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Exact => "exact",
            SolverChoice::Approx => "approx",
            SolverChoice::Oracle => "oracle",
            SolverChoice::Auto => "auto",
        })
    }
}

/// One row of the complexity table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// `"RE1"`, `"DE4"`, ...
    pub label: &'static str,
    /// `"O(n log n)"`, `"NP-complete"`, ...
    pub complexity: &'static str,
    /// Whether this crate has a polynomial exact algorithm for the row.
    pub polynomial_here: bool,
}

/// Complexity of `problem` under `case`. The sum of products shares the
/// row of the standard deviation.
pub fn table_row(case: Case, problem: Problem) -> TableRow {
    use Case::*;
    use Problem::*;
    let (label, complexity, polynomial_here) = match (case, problem) {
        (C1, Re) => ("RE1", "O(n log n)", true),
        // Polynomial, but the algorithm is not part of this crate.
        (C1, Ra) => ("RA1", "O(n log n)", false),
        (C1, De | Sop) => ("DE1", "O(n log n)", true),
        (C2, Re) => ("RE2", "O(n)", true),
        (C2, Ra) => ("RA2", "O(n^2)", true),
        (C2, De | Sop) => ("DE2", "O(n)", true),
        (C3, Re) => ("RE3", "O(n log n)", true),
        (C3, Ra) => ("RA3", "NP-complete", false),
        (C3, De | Sop) => ("DE3", "NP-complete", false),
        (C4, Re) => ("RE4", "O(n log n)", true),
        (C4, Ra) => ("RA4", "NP-complete", false),
        (C4, De | Sop) => ("DE4", "NP-complete", false),
    };
    TableRow {
        label,
        complexity,
        polynomial_here,
    }
}

/// A solution and how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct Solved<W> {
    pub solution: Solution<W>,
    pub row: TableRow,
    /// The algorithm family that actually ran.
    pub used: SolverChoice,
}

fn polynomial<W: Weight>(instance: &StarInstance<W>, problem: Problem) -> Result<Solution<W>> {
    match (instance.case(), problem) {
        (Case::C1, Problem::De | Problem::Sop) => solve_de1(instance),
        (Case::C2, Problem::Re) => solve_re2(instance),
        (Case::C2, Problem::Ra) => solve_ra2(instance),
        (Case::C2, Problem::De | Problem::Sop) => solve_de2(instance),
        (_, Problem::Re) => solve_re3_re4(instance),
        _ => unreachable!("no polynomial algorithm for this row"),
    }
}

fn approximate<W: Weight>(instance: &StarInstance<W>, problem: Problem) -> Result<Solution<W>> {
    match problem {
        Problem::Ra => approx_ra(instance),
        Problem::De => approx_de(instance).map(|o| o.solution),
        Problem::Sop => approx_sop(instance).map(|o| o.solution),
        Problem::Re => solve_re3_re4(instance),
    }
}

fn within_budget(instance: &StarInstance<impl Weight>, budget: &OracleBudget) -> bool {
    instance.len() <= budget.max_children
        && state_count(instance.len(), instance.case(), SearchSpace::Canonical) <= budget.max_states
}

fn oracle<W: Weight>(
    instance: &StarInstance<W>,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<Solution<W>> {
    brute_force(instance, problem, budget).map(|r| r.solution)
}

/// Solves one star.
///
/// `Exact` on a row without a polynomial algorithm runs the exhaustive
/// search when it fits the budget and is refused otherwise.
pub fn solve<W: Weight>(
    instance: &StarInstance<W>,
    problem: Problem,
    choice: SolverChoice,
    budget: &OracleBudget,
) -> Result<Solved<W>> {
    let row = table_row(instance.case(), problem);
    let done = |solution, used| {
        Ok(Solved {
            solution,
            row,
            used,
        })
    };
    match choice {
        SolverChoice::Oracle => done(oracle(instance, problem, budget)?, SolverChoice::Oracle),
        _ if row.polynomial_here => done(polynomial(instance, problem)?, SolverChoice::Exact),
        SolverChoice::Exact => {
            if within_budget(instance, budget) {
                done(oracle(instance, problem, budget)?, SolverChoice::Oracle)
            } else {
                Err(Error::Refused(format!(
                    "{} is {} here and {} children exceed the exhaustive-search budget of {}; \
                     use --solver approx or auto",
                    row.label,
                    if row.complexity == "NP-complete" {
                        "NP-complete"
                    } else {
                        "not implemented exactly"
                    },
                    instance.len(),
                    budget.max_children
                )))
            }
        }
        SolverChoice::Approx => done(approximate(instance, problem)?, SolverChoice::Approx),
        SolverChoice::Auto => {
            if within_budget(instance, budget) {
                done(oracle(instance, problem, budget)?, SolverChoice::Oracle)
            } else {
                done(approximate(instance, problem)?, SolverChoice::Approx)
            }
        }
    }
}
