//! `balloon`: lay out trees, optimize their angles, verify reports and
//! generate hardness gadgets.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage, 3 input,
//! 4 solver refusal.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use balloon_core::gadgets::{
    gen_de4_from_cubic, gen_ra4_from_2slw, gen_ra4_units, CubicGraph, TwoStationInstance,
};
use balloon_core::io::{
    de4_document, emit_layout_report, emit_report, emit_svg, parse_report, parse_star, parse_tree,
    ra4_document, serialize_compact, serialize_star, verify_star, verify_tree, ReportRecord,
    StarDocument, SvgOptions, Units,
};
use balloon_core::layout::{
    fractal_layout, optimize_tree, realize, sns_layout, FractalParams, NodeRadii, SnsOptions,
};
use balloon_core::oracle::OracleBudget;
use balloon_core::solve::{solve, SolverChoice};
use balloon_core::{Case, Error, Problem, RootedTree, Star, StarInstance, SubWedgePair};

#[derive(Parser, Debug)]
#[command(
    name = "balloon",
    version,
    about = "Balloon drawings of rooted trees and their angle optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a tree without optimization.
    Layout(LayoutArgs),
    /// Optimize the angles of a star instance or of every node of a tree.
    Optimize(OptimizeArgs),
    /// Check a report against the instance it was produced from.
    Verify(VerifyArgs),
    /// Build a star instance from a hardness reduction.
    Gadget(GadgetArgs),
    /// Write a random star or tree.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Sns,
    Fractal,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Write the SVG drawing here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw dashed circles around subtrees.
    #[arg(long)]
    guides: bool,
    /// Print node ids next to the dots.
    #[arg(long)]
    labels: bool,
}

impl RenderArgs {
    fn options(&self) -> SvgOptions {
        SvgOptions {
            guides: self.guides,
            labels: self.labels,
            ..SvgOptions::default()
        }
    }
}

#[derive(Args, Debug)]
struct LayoutArgs {
    /// Tree file (JSON or compact form), or `-` for stdin.
    input: String,
    #[arg(long, value_enum, default_value_t = Model::Sns)]
    model: Model,
    /// Edge length ratio between depths (fractal model).
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Length of the root's edges (fractal model).
    #[arg(long, default_value_t = 1.0)]
    root_radius: f64,
    /// Radius of the circle around a leaf (SNS model).
    #[arg(long, default_value_t = 1.0)]
    leaf_radius: f64,
    #[command(flatten)]
    render: RenderArgs,
    /// Write the node positions as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Largest star the exhaustive search may take.
    #[arg(long)]
    max_children: Option<usize>,
    /// Largest number of states the exhaustive search may visit.
    #[arg(long)]
    max_states: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        let d = OracleBudget::default();
        OracleBudget {
            max_children: self.max_children.unwrap_or(d.max_children),
            max_states: self.max_states.unwrap_or(d.max_states),
        }
    }
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    /// Star or tree files, or `-` for stdin.
    #[arg(required = true)]
    inputs: Vec<String>,
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    /// Case; a star file's own case by default, C1 for trees.
    #[arg(long, value_parser = parse_case)]
    case: Option<Case>,
    #[arg(long, value_parser = parse_solver, default_value = "auto")]
    solver: SolverChoice,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 1.0)]
    leaf_radius: f64,
    /// Worker threads when several inputs are given.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    render: RenderArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Star or tree file the report was produced from.
    instance: String,
    /// Report written by `optimize`.
    solution: String,
    #[arg(long, default_value_t = 1.0)]
    leaf_radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GadgetKind {
    /// Two-station instance `{"jobs": [[w1, w2], ...], "lb": .., "ub": ..}`.
    #[value(name = "ra4-from-2slw")]
    Ra4From2slw,
    /// Cubic graph `{"nodes": n, "edges": [[u, v], ...]}`.
    De4FromCubic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    Rad,
    Abstract,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    #[arg(value_enum)]
    kind: GadgetKind,
    input: String,
    /// Units of the two-station gadget: scaled to the circle or raw weights.
    #[arg(long, value_enum, default_value_t = UnitsArg::Rad)]
    units: UnitsArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RandomKind {
    Star,
    Tree,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(value_enum)]
    kind: RandomKind,
    /// Children of the star or nodes of the tree.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Case of a random star.
    #[arg(long, value_parser = parse_case, default_value = "C4")]
    case: Case,
    /// Attach tree nodes near the root rather than near the last node.
    #[arg(long)]
    bushy: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_solver(s: &str) -> Result<SolverChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Refused(_) | Error::OverBudget { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn with_source(name: &str, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{name}: {}", f.message);
    f
}

fn read_input(name: &str) -> CliResult<String> {
    let mut text = String::new();
    if name == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(name).map_err(|e| Failure::input(format!("{name}: {e}")))?;
    }
    if text.trim().is_empty() {
        return Err(Failure::usage(format!("{name}: empty input")));
    }
    Ok(text)
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}

enum Instance {
    Star(Star, StarDocument),
    Tree(RootedTree),
}

/// JSON objects with a `case` key are star documents; anything else is a
/// tree.
fn read_instance(name: &str) -> CliResult<Instance> {
    let text = read_input(name)?;
    let is_star = text.trim_start().starts_with('{')
        && serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .is_some_and(|v| v.get("case").is_some());
    if is_star {
        let (star, doc) = parse_star(&text).map_err(|e| with_source(name, e))?;
        Ok(Instance::Star(star, doc))
    } else {
        Ok(Instance::Tree(
            parse_tree(&text).map_err(|e| with_source(name, e))?,
        ))
    }
}

fn sns_options(leaf_radius: f64) -> SnsOptions {
    SnsOptions { leaf_radius }
}

fn cmd_layout(args: &LayoutArgs) -> CliResult<()> {
    let tree = parse_tree(&read_input(&args.input)?).map_err(|e| with_source(&args.input, e))?;
    let drawing = match args.model {
        Model::Sns => {
            let sns = sns_layout(&tree, &sns_options(args.leaf_radius))?;
            realize(&tree, &sns.stars, &sns.radii, &sns.default_solutions()?)?
        }
        Model::Fractal => fractal_layout(
            &tree,
            &FractalParams {
                gamma: args.gamma,
                root_radius: args.root_radius,
            },
        )?,
    };
    let svg = emit_svg(&tree, &drawing, &args.render.options());
    match &args.render.svg {
        Some(p) => write_output(Some(p), &svg)?,
        None if args.out.is_none() => write_output(None, &svg)?,
        None => {}
    }
    if let Some(p) = &args.out {
        write_output(Some(p), &emit_layout_report(&tree, &drawing))?;
    }
    Ok(())
}

/// Drawing of a lone star: the root with one leaf per child.
fn star_svg(
    star: &Star,
    solution: &balloon_core::Solution<f64>,
    options: &SvgOptions,
) -> CliResult<String> {
    let k = star.len();
    let tree = RootedTree::star(k);
    let root = tree.root();
    let mut stars = vec![None; tree.len()];
    let mut solutions = vec![None; tree.len()];
    let mut radii = vec![
        NodeRadii {
            inner: 0.0,
            outer: 0.0
        };
        tree.len()
    ];
    stars[root] = Some(star.clone());
    solutions[root] = Some(solution.clone());
    radii[root] = NodeRadii {
        inner: 1.0,
        outer: 1.0,
    };
    let drawing = realize(&tree, &stars, &radii, &solutions)?;
    Ok(emit_svg(&tree, &drawing, options))
}

struct Optimized {
    records: Vec<ReportRecord>,
    svg: Option<String>,
}

fn optimize_one(name: &str, args: &OptimizeArgs, render: bool) -> CliResult<Optimized> {
    let budget = args.budget.budget();
    match read_instance(name)? {
        Instance::Star(star, doc) => {
            let star = match args.case {
                Some(c) if c != star.case() => {
                    star.with_case(c).map_err(|e| with_source(name, e))?
                }
                _ => star,
            };
            let start = Instant::now();
            let solved = solve(&star, args.problem, args.solver, &budget)
                .map_err(|e| with_source(name, e))?;
            let rec = ReportRecord::new(
                "star",
                star.case(),
                args.problem,
                &solved,
                doc.units,
                start.elapsed(),
            );
            let svg = if render {
                Some(star_svg(&star, &solved.solution, &args.render.options())?)
            } else {
                None
            };
            Ok(Optimized {
                records: vec![rec],
                svg,
            })
        }
        Instance::Tree(tree) => {
            let case = args.case.unwrap_or(Case::C1);
            let opt = optimize_tree(
                &tree,
                args.problem,
                case,
                args.solver,
                &budget,
                &sns_options(args.leaf_radius),
            )
            .map_err(|e| with_source(name, e))?;
            let records = opt
                .results
                .iter()
                .map(|r| {
                    ReportRecord::new(
                        tree.node(r.node).id.clone(),
                        case,
                        args.problem,
                        &r.solved,
                        Units::Rad,
                        r.elapsed,
                    )
                })
                .collect();
            let svg = render.then(|| emit_svg(&tree, &opt.drawing, &args.render.options()));
            Ok(Optimized { records, svg })
        }
    }
}

fn cmd_optimize(args: &OptimizeArgs) -> CliResult<()> {
    if args.inputs.len() > 1 && args.render.svg.is_some() {
        return Err(Failure::usage("--svg takes a single input"));
    }
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    if args.inputs.iter().filter(|i| *i == "-").count() > 1 {
        return Err(Failure::usage("stdin can be read only once"));
    }
    let render = args.render.svg.is_some();
    let n = args.inputs.len();
    let results: Vec<Mutex<Option<CliResult<Optimized>>>> =
        (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..args.jobs.min(n) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let r = optimize_one(&args.inputs[i], args, render);
                *results[i]
                    .lock()
                    .expect("no worker panics while holding the lock") = Some(r);
            });
        }
    });
    let mut records = Vec::new();
    for (name, slot) in args.inputs.iter().zip(results) {
        let out = slot
            .into_inner()
            .expect("workers finished")
            .expect("every input was processed")?;
        if let (Some(p), Some(svg)) = (&args.render.svg, &out.svg) {
            write_output(Some(p), svg)?;
        }
        records.extend(out.records.into_iter().map(|mut r| {
            if n > 1 {
                r.source = Some(name.clone());
            }
            r
        }));
    }
    write_output(args.out.as_deref(), &emit_report(&records))
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<bool> {
    let instance = read_instance(&args.instance)?;
    let records =
        parse_report(&read_input(&args.solution)?).map_err(|e| with_source(&args.solution, e))?;
    let report = match instance {
        Instance::Star(star, _) => verify_star(&star, &records),
        Instance::Tree(tree) => verify_tree(&tree, &records, &sns_options(args.leaf_radius))?,
    };
    let text = serde_json::to_string_pretty(&report).expect("verify reports serialize");
    write_output(None, &text)?;
    Ok(report.pass)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

fn json_input<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn cmd_gadget(args: &GadgetArgs) -> CliResult<()> {
    let text = read_input(&args.input)?;
    let doc = match args.kind {
        GadgetKind::Ra4From2slw => {
            let raw: TwoStationInstance<f64> = json_input(&args.input, &text)?;
            let tsi = TwoStationInstance::new(raw.jobs, raw.lb, raw.ub)
                .map_err(|e| with_source(&args.input, e))?;
            match args.units {
                UnitsArg::Rad => {
                    let g = gen_ra4_from_2slw(&tsi).map_err(|e| with_source(&args.input, e))?;
                    ra4_document(&g, &tsi, Units::Rad)
                }
                UnitsArg::Abstract => {
                    let g = gen_ra4_units(&tsi).map_err(|e| with_source(&args.input, e))?;
                    ra4_document(&g, &tsi, Units::Abstract)
                }
            }
        }
        GadgetKind::De4FromCubic => {
            let g: GraphDocument = json_input(&args.input, &text)?;
            let graph =
                CubicGraph::new(g.nodes, &g.edges).map_err(|e| with_source(&args.input, e))?;
            de4_document(&gen_de4_from_cubic(&graph).map_err(|e| with_source(&args.input, e))?)
        }
    };
    write_output(args.out.as_deref(), &serialize_star(&doc))
}

fn cmd_random(args: &RandomArgs) -> CliResult<()> {
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let text = match args.kind {
        RandomKind::Star => {
            let children: Vec<SubWedgePair<f64>> = (0..args.n)
                .map(|_| {
                    let a = 1.0 - rng.gen::<f64>();
                    if args.case == Case::C1 {
                        SubWedgePair::even(a)
                    } else {
                        SubWedgePair::new(a, 1.0 - rng.gen::<f64>())
                    }
                })
                .collect();
            let star = StarInstance::new(children, args.case)?.normalize()?;
            serialize_star(&StarDocument::from_star(&star, Units::Rad, None))
        }
        RandomKind::Tree => {
            let parents: Vec<usize> = (0..args.n)
                .map(|i| match i {
                    0 => 0,
                    _ if args.bushy => rng.gen_range(0..i.min(1 + i / 4)),
                    _ => rng.gen_range(i.saturating_sub(5)..i),
                })
                .collect();
            serialize_compact(&RootedTree::from_parents(&parents)?)
        }
    };
    write_output(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Layout(a) => cmd_layout(a).map(|_| true),
        Command::Optimize(a) => cmd_optimize(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Gadget(a) => cmd_gadget(a).map(|_| true),
        Command::Random(a) => cmd_random(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("balloon: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
