//! Checks reported solutions against their instances.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::report::ReportRecord;
use crate::bipartite::Matching;
use crate::error::Result;
use crate::layout::{node_star, sns_layout, SnsOptions};
use crate::model::{
    compute_metrics, Case, CircularOrdering, FlipAssignment, Guarantee, RootedTree, Solution,
};
use crate::Star;

/// Relative tolerance for reported reals (they carry 12 significant digits).
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// One field whose reported value differs from the recomputed one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldDiff {
    pub node: String,
    pub field: String,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checked: usize,
    pub diffs: Vec<FieldDiff>,
}

impl VerifyReport {
    fn finish(checked: usize, diffs: Vec<FieldDiff>) -> Self {
        VerifyReport {
            pass: diffs.is_empty(),
            checked,
            diffs,
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= VERIFY_TOLERANCE * (1.0 + a.abs().max(b.abs()))
}

struct Diffs<'a> {
    node: &'a str,
    out: Vec<FieldDiff>,
}

impl Diffs<'_> {
    fn push(&mut self, field: impl Into<String>, expected: impl ToString, found: impl ToString) {
        self.out.push(FieldDiff {
            node: self.node.to_string(),
            field: field.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    fn real(&mut self, field: &str, expected: f64, found: f64) {
        if !close(expected, found) {
            self.push(field, expected, found);
        }
    }
}

/// Whether `ordering` is allowed under `case`: C2 keeps the circular order
/// up to rotation and reflection.
fn ordering_allowed(case: Case, ordering: &CircularOrdering) -> bool {
    if case != Case::C2 || ordering.len() < 3 {
        return true;
    }
    let o = ordering.as_slice();
    let n = o.len();
    let step = |d: usize| (0..n).all(|i| o[(i + 1) % n] == (o[i] + d) % n);
    step(1) || step(n - 1)
}

/// Parses the ordering and flips of a record, or explains why they are
/// invalid.
fn decode(
    star: &Star,
    rec: &ReportRecord,
    d: &mut Diffs,
) -> Option<(CircularOrdering, FlipAssignment)> {
    let n = star.len();
    if rec.ordering.len() != n {
        d.push("ordering.len", n, rec.ordering.len());
        return None;
    }
    let ordering = match CircularOrdering::new(rec.ordering.clone()) {
        Ok(o) => o,
        Err(e) => {
            d.push("ordering", format!("a permutation of 0..{n}"), e);
            return None;
        }
    };
    if rec.flips.len() != n {
        d.push("flips.len", n, rec.flips.len());
        return None;
    }
    let flips = FlipAssignment::new(rec.flips.clone());
    if !ordering_allowed(star.case(), &ordering) {
        d.push(
            "ordering",
            "a rotation or reflection of the given order",
            format!("{:?}", rec.ordering),
        );
    }
    if star.case() == Case::C3 && !flips.is_zero() {
        d.push(
            "flips",
            "all false (fixed sub-wedges)",
            format!("{:?}", rec.flips),
        );
    }
    match Matching::from_drawing(&ordering, &flips) {
        Ok(m) => {
            let cycles = m.subcycles().count();
            if cycles != 1 {
                d.push("matching", "one cycle", format!("{cycles} cycles"));
            }
        }
        Err(e) => d.push("matching", "a perfect matching", e),
    }
    Some((ordering, flips))
}

fn check_record(star: &Star, rec: &ReportRecord, d: &mut Diffs) -> Option<Solution<f64>> {
    if rec.case != star.case() {
        d.push("case", star.case(), rec.case);
    }
    let (ordering, flips) = decode(star, rec, d)?;
    let m = match compute_metrics(star, &ordering, &flips) {
        Ok(m) => m,
        Err(e) => {
            d.push("metrics", "computable", e);
            return None;
        }
    };
    if m.angles.len() != rec.angles.len() {
        d.push("angles.len", m.angles.len(), rec.angles.len());
    } else {
        for (i, (&a, &b)) in m.angles.iter().zip(&rec.angles).enumerate() {
            d.real(&format!("angles[{i}]"), a, b);
        }
    }
    d.real("ang_resl", m.ang_resl, rec.ang_resl);
    match (m.asp_ratio_unbounded, rec.asp_ratio) {
        (false, Some(r)) => d.real("asp_ratio", m.asp_ratio, r),
        (true, None) => {}
        (_, found) => d.push("asp_ratio", m.asp_ratio, format!("{found:?}")),
    }
    d.real("std_dev", m.std_dev, rec.std_dev);
    d.real("sop", m.sop, rec.sop);
    if rec.optimal != (rec.guarantee == Guarantee::Optimal) {
        d.push("optimal", rec.guarantee == Guarantee::Optimal, rec.optimal);
    }
    Some(Solution {
        ordering,
        flips,
        metrics: m,
        solver_name: rec.solver.clone(),
        guarantee: rec.guarantee,
    })
}

/// Checks records against a single star; every record must describe it.
/// A record may solve the star under another case (as `optimize --case`
/// does) when the sub-wedges allow it.
pub fn verify_star(star: &Star, records: &[ReportRecord]) -> VerifyReport {
    let mut all = Vec::new();
    if records.is_empty() {
        all.push(FieldDiff {
            node: "star".into(),
            field: "records".into(),
            expected: "at least one".into(),
            found: "0".into(),
        });
    }
    for rec in records {
        let mut d = Diffs {
            node: &rec.node,
            out: Vec::new(),
        };
        match star.with_case(rec.case) {
            Ok(s) => {
                check_record(&s, rec, &mut d);
            }
            Err(e) => d.push("case", star.case(), format!("{} ({e})", rec.case)),
        }
        all.extend(d.out);
    }
    VerifyReport::finish(records.len(), all)
}

/// Checks records against a tree: the star of every internal node is
/// rebuilt from the layout and the reported solutions of its children, so
/// tampering with a child also shows at its parent.
pub fn verify_tree(
    tree: &RootedTree,
    records: &[ReportRecord],
    options: &SnsOptions,
) -> Result<VerifyReport> {
    let sns = sns_layout(tree, options)?;
    let mut diffs = Vec::new();
    let mut by_id: HashMap<&str, &ReportRecord> = HashMap::new();
    for rec in records {
        if by_id.insert(rec.node.as_str(), rec).is_some() {
            diffs.push(FieldDiff {
                node: rec.node.clone(),
                field: "node".into(),
                expected: "one record per node".into(),
                found: "duplicate".into(),
            });
        }
        match tree.find(&rec.node) {
            Some(v) if !tree.is_leaf(v) => {}
            _ => diffs.push(FieldDiff {
                node: rec.node.clone(),
                field: "node".into(),
                expected: "an internal node of the tree".into(),
                found: rec.node.clone(),
            }),
        }
    }
    let n = tree.len();
    let mut stars = vec![None; n];
    let mut solutions = vec![None; n];
    for v in tree.internal_postorder() {
        let id = tree.node(v).id.as_str();
        let mut d = Diffs {
            node: id,
            out: Vec::new(),
        };
        match by_id.get(id) {
            None => d.push("record", "present", "missing"),
            Some(rec) => {
                let star = node_star(tree, &sns, rec.case, v, &stars, &solutions)?;
                solutions[v] = check_record(&star, rec, &mut d);
                stars[v] = Some(star);
            }
        }
        diffs.extend(d.out);
    }
    Ok(VerifyReport::finish(records.len(), diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::report::ReportRecord;
    use crate::io::star::Units;
    use crate::model::{Problem, StarInstance};
    use crate::oracle::OracleBudget;
    use crate::solve::{solve, SolverChoice};
    use std::time::Duration;

    fn record(star: &Star, case: Case, problem: Problem) -> ReportRecord {
        let s = solve(star, problem, SolverChoice::Auto, &OracleBudget::default()).unwrap();
        ReportRecord::new("star", case, problem, &s, Units::Abstract, Duration::ZERO)
    }

    #[test]
    fn own_solutions_pass_and_tampering_fails() {
        let star =
            StarInstance::from_pairs(&[(0.5, 1.0), (1.5, 0.25), (2.0, 1.0), (0.3, 0.9)], Case::C4)
                .unwrap();
        let rec = record(&star, Case::C4, Problem::De);
        assert!(verify_star(&star, std::slice::from_ref(&rec)).pass);

        let mut bad = rec.clone();
        bad.angles[1] += 0.01;
        let r = verify_star(&star, &[bad]);
        assert!(!r.pass);
        assert_eq!(r.diffs.len(), 1);
        assert_eq!(r.diffs[0].field, "angles[1]");

        let mut dup = rec.clone();
        dup.ordering[1] = dup.ordering[0];
        let r = verify_star(&star, &[dup]);
        assert_eq!(r.diffs[0].field, "ordering");
    }

    #[test]
    fn case_rules() {
        let c2 =
            StarInstance::from_pairs(&[(0.5, 1.0), (1.5, 0.25), (2.0, 1.0), (0.3, 0.9)], Case::C2)
                .unwrap();
        let mut rec = record(&c2, Case::C2, Problem::Re);
        rec.ordering = vec![1, 0, 2, 3];
        assert!(verify_star(&c2, &[rec.clone()])
            .diffs
            .iter()
            .any(|d| d.field == "ordering"));
        rec.ordering = vec![3, 2, 1, 0];
        assert!(!verify_star(&c2, &[rec])
            .diffs
            .iter()
            .any(|d| d.field == "ordering"));

        let c3 = c2.with_case(Case::C3).unwrap();
        let mut rec = record(&c3, Case::C3, Problem::Re);
        assert!(verify_star(&c3, &[rec.clone()]).pass);
        rec.flips[0] = true;
        assert!(verify_star(&c3, &[rec])
            .diffs
            .iter()
            .any(|d| d.field == "flips"));
    }
}
