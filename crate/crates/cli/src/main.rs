//! `csd` — generate, solve, verify, reduce, and benchmark co-secure
//! domination instances.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 input error,
//! 3 no feasible solution, 4 a guarantee the algorithms are expected to
//! uphold was violated at runtime.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cosecure::approx;
use cosecure::exact::{exact_min, Method, SolveResult};
use cosecure::gen::{self, Family};
use cosecure::graph::{Graph, VertexSet};
use cosecure::reduce::{self, ReduceError, ReductionMap};
use cosecure::verify::{self, Certificate, SetProperty};
use cosecure_cli::bench::{self, BenchConfig, Suite};
use cosecure_cli::format;

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;
const EXIT_DISCREPANCY: u8 = 4;

#[derive(Parser)]
#[command(name = "csd", version, about = "co-secure domination toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a family or a seeded random model.
    Gen(GenArgs),
    /// Compute an optimal or approximate set for a domination problem.
    Solve(SolveArgs),
    /// Check a vertex set against a property and print its certificate.
    Verify(VerifyArgs),
    /// Build a reduction instance and its bookkeeping map.
    Reduce(ReduceArgs),
    /// Recover a base-graph dominating set from a reduced-graph solution.
    Extract(ExtractArgs),
    /// Validate structural graph properties.
    CheckStructure(CheckStructureArgs),
    /// Run a benchmark suite and write its report.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    CompleteMultipartite,
    Wheel,
    Star,
    RandomRegular,
    RandomMinDegree2,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Vertex count (families parameterized by n).
    #[arg(long)]
    n: Option<usize>,
    /// Part sizes for multipartite families, e.g. `2,2,3`.
    #[arg(long)]
    parts: Option<String>,
    /// Degree for random regular graphs.
    #[arg(long)]
    degree: Option<usize>,
    /// Edge probability for the random min-degree-2 model.
    #[arg(long)]
    p: Option<f64>,
    /// Seed; mandatory for the random models.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Dominating,
    DoubleDominating,
    Csds,
    Monopoly,
}

impl From<ProblemArg> for SetProperty {
    fn from(p: ProblemArg) -> SetProperty {
        match p {
            ProblemArg::Dominating => SetProperty::Dominating,
            ProblemArg::DoubleDominating => SetProperty::DoubleDominating,
            ProblemArg::Csds => SetProperty::Csds,
            ProblemArg::Monopoly => SetProperty::PartialMonopoly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
    Reg3,
    Reg4,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    #[arg(short, long)]
    input: PathBuf,
    /// Cardinality cap for the exact search.
    #[arg(long)]
    limit: Option<usize>,
    /// Also compute the exact optimum and report the ratio.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: ProblemArg,
    #[arg(short, long)]
    input: PathBuf,
    /// Comma-separated vertex identifiers, e.g. `0,2`.
    #[arg(long)]
    set: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    Pebg,
    StarConvex,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    kind: ReductionArg,
    #[arg(short, long)]
    input: PathBuf,
    /// Where to write the reduced graph.
    #[arg(short, long)]
    output: PathBuf,
    /// Where to write the reduction map (JSON).
    #[arg(long)]
    map: PathBuf,
}

#[derive(Args)]
struct ExtractArgs {
    /// Reduction map written by `reduce`.
    #[arg(long)]
    map: PathBuf,
    /// The original graph the reduction was built from.
    #[arg(long)]
    base: PathBuf,
    /// The reduced graph.
    #[arg(long)]
    reduced: PathBuf,
    /// Co-secure dominating set of the reduced graph, e.g. `1,6,8,11`.
    #[arg(long)]
    set: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureKind {
    Bipartite,
    StarConvex,
    Peo,
    Bisimplicial,
}

#[derive(Args)]
struct CheckStructureArgs {
    #[arg(long, value_enum)]
    kind: StructureKind,
    #[arg(short, long)]
    input: PathBuf,
    /// Reduction map whose stored elimination ordering should be checked.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Explicit edge ordering for `peo`, e.g. `0-1,2-3`.
    #[arg(long)]
    order: Option<String>,
    /// Edge for `bisimplicial`, e.g. `0,2`.
    #[arg(long)]
    edge: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV report path; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Optional JSON mirror of the report.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen(args) => run_gen(args),
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
        Command::Reduce(args) => run_reduce(args),
        Command::Extract(args) => run_extract(args),
        Command::CheckStructure(args) => run_check_structure(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse_edge_list(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit_graph(g: &Graph, output: Option<&Path>) -> Result<()> {
    let text = format::write_edge_list(g);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<u8> {
    let need_n = || args.n.ok_or_else(|| anyhow!("--n is required for this family"));
    let parts = || -> Result<Vec<usize>> {
        let raw = args.parts.as_ref().ok_or_else(|| anyhow!("--parts is required for this family"))?;
        raw.split(',')
            .map(|t| t.trim().parse().map_err(|_| anyhow!("bad part size `{t}`")))
            .collect()
    };
    let need_seed = || args.seed.ok_or_else(|| anyhow!("--seed is mandatory for random generation"));
    let graph = match args.family {
        FamilyKind::Path => gen::family(&Family::Path { n: need_n()? })?,
        FamilyKind::Cycle => gen::family(&Family::Cycle { n: need_n()? })?,
        FamilyKind::Complete => gen::family(&Family::Complete { n: need_n()? })?,
        FamilyKind::CompleteBipartite => {
            let p = parts()?;
            if p.len() != 2 {
                bail!("--parts must name exactly two sizes, e.g. `2,3`");
            }
            gen::family(&Family::CompleteBipartite { a: p[0], b: p[1] })?
        }
        FamilyKind::CompleteMultipartite => gen::family(&Family::CompleteMultipartite { parts: parts()? })?,
        FamilyKind::Wheel => gen::family(&Family::Wheel { n: need_n()? })?,
        FamilyKind::Star => gen::family(&Family::Star { n: need_n()? })?,
        FamilyKind::RandomRegular => {
            let degree = args.degree.ok_or_else(|| anyhow!("--degree is required"))?;
            gen::random_regular(need_n()?, degree, need_seed()?)?
        }
        FamilyKind::RandomMinDegree2 => {
            let p = args.p.ok_or_else(|| anyhow!("--p is required"))?;
            gen::random_min_degree2(need_n()?, p, need_seed()?)?
        }
    };
    emit_graph(&graph, args.output.as_deref())?;
    Ok(EXIT_OK)
}

fn run_solve(args: SolveArgs) -> Result<u8> {
    let graph = load_graph(&args.input)?;
    let problem: SetProperty = args.problem.into();
    let result = match (args.method, problem) {
        (MethodArg::Exact, p) => exact_min(&graph, p, args.limit),
        (MethodArg::Greedy, SetProperty::DoubleDominating) => {
            let start = Instant::now();
            let set = approx::greedy_double_dominating(&graph);
            SolveResult {
                problem,
                cardinality: Some(set.len()),
                set: Some(set),
                method: Method::Greedy,
                elapsed: start.elapsed(),
                diagnostics: Vec::new(),
            }
        }
        (MethodArg::Greedy, SetProperty::Csds) => approx::approx_csds(&graph)?,
        (MethodArg::Reg3, SetProperty::Csds) => approx::approx_csds_cubic(&graph)?,
        (MethodArg::Reg4, SetProperty::Csds) => approx::approx_csds_quartic(&graph)?,
        _ => bail!("this method does not apply to problem `{problem}`"),
    };

    let oracle = if args.oracle && result.method != Method::Exact {
        exact_min(&graph, problem, None).cardinality
    } else {
        None
    };
    let ratio = match (result.cardinality, oracle) {
        (Some(c), Some(o)) if o > 0 => Some(c as f64 / o as f64),
        _ => None,
    };

    if args.json {
        let payload = json!({
            "graph": args.input.display().to_string(),
            "kind": problem.to_string(),
            "set": result.set.as_ref().map(VertexSet::to_vec),
            "cardinality": result.cardinality,
            "method": result.method.to_string(),
            "oracle": oracle,
            "ratio": ratio,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        match &result.set {
            Some(set) => {
                println!("{} {} set: {} (cardinality {})", result.method, problem, set, set.len());
                if let Some(o) = oracle {
                    println!("oracle optimum: {o}, ratio {:.6}", ratio.unwrap_or(f64::NAN));
                }
                eprintln!("elapsed: {:?}", result.elapsed);
            }
            None => println!("no feasible {problem} set within the search bound"),
        }
    }
    if !result.diagnostics.is_empty() {
        for d in &result.diagnostics {
            eprintln!("discrepancy: {d}");
        }
        return Ok(EXIT_DISCREPANCY);
    }
    if result.set.is_none() {
        return Ok(EXIT_NO_SOLUTION);
    }
    Ok(EXIT_OK)
}

fn certificate_json(cert: &Certificate) -> serde_json::Value {
    json!({
        "verdict": cert.verdict,
        "reason": cert.reason.map(|r| r.to_string()),
        "witnesses": cert
            .witnesses
            .iter()
            .map(|(v, w)| (v.to_string(), w.to_vec()))
            .collect::<std::collections::BTreeMap<_, _>>(),
    })
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let graph = load_graph(&args.input)?;
    let set = format::parse_vertex_set(&args.set, graph.n()).map_err(|e| anyhow!(e))?;
    let problem: SetProperty = args.kind.into();
    let cert = match problem {
        SetProperty::Dominating => verify::is_dominating(&graph, &set),
        SetProperty::DoubleDominating => verify::is_double_dominating(&graph, &set),
        SetProperty::Csds => verify::is_csds(&graph, &set),
        SetProperty::PartialMonopoly => verify::is_partial_monopoly(&graph, &set),
    };
    if args.json {
        let mut payload = certificate_json(&cert);
        payload["graph"] = json!(args.input.display().to_string());
        payload["kind"] = json!(problem.to_string());
        payload["set"] = json!(set.to_vec());
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("verdict: {}", cert.verdict);
        if let Some(reason) = cert.reason {
            println!("reason: {reason}");
        }
        println!("witnesses:");
        for (v, w) in &cert.witnesses {
            println!("  {v}: {w}");
        }
    }
    Ok(if cert.verdict { EXIT_OK } else { EXIT_FALSE })
}

fn run_reduce(args: ReduceArgs) -> Result<u8> {
    let graph = load_graph(&args.input)?;
    let (reduced, map) = match args.kind {
        ReductionArg::Pebg => {
            let (reduced, map) = reduce::build_pebg(&graph)?;
            (reduced, ReductionMap::Pebg(map))
        }
        ReductionArg::StarConvex => {
            let (reduced, map) = reduce::build_star_convex(&graph)?;
            (reduced, ReductionMap::StarConvex(map))
        }
    };
    emit_graph(&reduced, Some(&args.output))?;
    let mut map_json = serde_json::to_string_pretty(&map)?;
    map_json.push('\n');
    fs::write(&args.map, map_json).with_context(|| format!("writing {}", args.map.display()))?;
    println!("|V'| = {}, |E'| = {}", reduced.n(), reduced.edge_count());
    Ok(EXIT_OK)
}

fn load_map(path: &Path) -> Result<ReductionMap> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_extract(args: ExtractArgs) -> Result<u8> {
    let map = load_map(&args.map)?;
    let base = load_graph(&args.base)?;
    let reduced = load_graph(&args.reduced)?;
    let set = format::parse_vertex_set(&args.set, reduced.n()).map_err(|e| anyhow!(e))?;
    let extracted = match &map {
        ReductionMap::Pebg(m) => reduce::extract_dom_pebg(m, &base, &reduced, &set),
        ReductionMap::StarConvex(m) => reduce::extract_dom_star(m, &base, &reduced, &set),
    };
    let dominating = match extracted {
        Ok(d) => d,
        Err(e @ ReduceError::ReductionViolation(_)) => {
            eprintln!("discrepancy: {e}");
            return Ok(EXIT_DISCREPANCY);
        }
        Err(e) => return Err(e.into()),
    };
    if args.json {
        let payload = json!({
            "graph": args.base.display().to_string(),
            "kind": "dominating",
            "set": dominating.to_vec(),
            "cardinality": dominating.len(),
            "method": "extract",
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("dominating set: {} (cardinality {})", dominating, dominating.len());
    }
    Ok(EXIT_OK)
}

fn run_check_structure(args: CheckStructureArgs) -> Result<u8> {
    let graph = load_graph(&args.input)?;
    match args.kind {
        StructureKind::Bipartite => match graph.bipartition() {
            Some((x, y)) => {
                println!("bipartite: X = {x}, Y = {y}");
                Ok(EXIT_OK)
            }
            None => {
                println!("not bipartite");
                Ok(EXIT_FALSE)
            }
        },
        StructureKind::StarConvex => match reduce::check_star_convex(&graph)? {
            Some(center) => {
                println!("star convex with center {center}");
                Ok(EXIT_OK)
            }
            None => {
                println!("not star convex");
                Ok(EXIT_FALSE)
            }
        },
        StructureKind::Peo => {
            let order = if let Some(text) = &args.order {
                format::parse_edge_order(text).map_err(|e| anyhow!(e))?
            } else if let Some(path) = &args.map {
                match load_map(path)? {
                    ReductionMap::Pebg(m) => m.peo,
                    ReductionMap::StarConvex(_) => {
                        bail!("the map at {} carries no elimination ordering", path.display())
                    }
                }
            } else {
                bail!("`peo` needs --order or --map");
            };
            if reduce::check_peo(&graph, &order)? {
                println!("valid perfect elimination ordering ({} edges)", order.len());
                Ok(EXIT_OK)
            } else {
                println!("not a perfect elimination ordering");
                Ok(EXIT_FALSE)
            }
        }
        StructureKind::Bisimplicial => {
            let edge = args.edge.as_ref().ok_or_else(|| anyhow!("`bisimplicial` needs --edge u,v"))?;
            let ends = format::parse_vertex_set(edge, graph.n()).map_err(|e| anyhow!(e))?;
            let pair = ends.to_vec();
            if pair.len() != 2 {
                bail!("--edge must name exactly two vertices");
            }
            if reduce::is_bisimplicial(&graph, pair[0], pair[1])? {
                println!("edge ({}, {}) is bi-simplicial", pair[0], pair[1]);
                Ok(EXIT_OK)
            } else {
                println!("edge ({}, {}) is not bi-simplicial", pair[0], pair[1]);
                Ok(EXIT_FALSE)
            }
        }
    }
}

fn worker_count() -> usize {
    std::env::var("CSD_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn run_bench(args: BenchArgs) -> Result<u8> {
    let suite: Suite = args.suite.parse().map_err(|e: String| anyhow!(e))?;
    let cfg = BenchConfig {
        suite,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        workers: worker_count(),
    };
    let start = Instant::now();
    let report = bench::run_suite(&cfg).map_err(|e| anyhow!(e))?;
    let csv = bench::to_csv(&report.records);
    match &args.csv {
        Some(path) => fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.json {
        fs::write(path, bench::to_json(&report.records))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!(
        "suite {}: {} records in {:?}",
        suite.name(),
        report.records.len(),
        start.elapsed()
    );
    if report.incomplete {
        eprintln!("warning: report incomplete; some instances exceeded the oracle caps");
    }
    if !report.violations.is_empty() {
        let dir = args
            .csv
            .as_deref()
            .and_then(Path::parent)
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or_else(|| Path::new("."));
        for (id, graph) in &report.violations {
            let path = dir.join(format!("{}-violation-{id}.el", suite.name()));
            fs::write(&path, format::write_edge_list(graph))
                .with_context(|| format!("writing {}", path.display()))?;
            eprintln!("violation: instance {id}, counterexample at {}", path.display());
        }
        return Ok(EXIT_DISCREPANCY);
    }
    Ok(EXIT_OK)
}
