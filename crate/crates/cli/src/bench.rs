//! Benchmark suites. Each suite runs a deterministic instance corpus
//! through a solver, records one row per check, and flags any row whose
//! guarantee failed so the caller can dump the counterexample and exit
//! loudly.
//!
//! Reports are byte-identical across reruns with the same flags and seeds,
//! regardless of the worker count: instances are evaluated independently
//! and rows are emitted in instance order. Wall-clock timings are kept in
//! memory only and never serialized.

use std::time::{Duration, Instant};

use serde::Serialize;

use cosecure::approx;
use cosecure::exact::exact_min;
use cosecure::gen::{self, Family};
use cosecure::graph::Graph;
use cosecure::reduce;
use cosecure::verify::{self, SetProperty};

/// Largest n the plain-domination oracles are run at.
pub const GAMMA_ORACLE_CAP: usize = 20;
/// Largest n the co-secure oracle is run at.
pub const CSDS_ORACLE_CAP: usize = 16;
/// Largest n the exhaustive subset scans of the monopoly suite are run at.
pub const EXHAUSTIVE_CAP: usize = 14;
/// Largest base n the reduction suite solves both sides at.
pub const REDUCTION_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Reg3,
    Reg4,
    Reductions,
    Monopoly,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Reg3 => "reg3",
            Suite::Reg4 => "reg4",
            Suite::Reductions => "reductions",
            Suite::Monopoly => "monopoly",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "reg3" => Ok(Suite::Reg3),
            "reg4" => Ok(Suite::Reg4),
            "reductions" => Ok(Suite::Reductions),
            "monopoly" => Ok(Suite::Monopoly),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

/// One verified guarantee on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRecord {
    pub suite: String,
    pub instance: String,
    pub family: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub method: String,
    pub cardinality: usize,
    pub oracle: Option<usize>,
    pub ratio: Option<f64>,
    pub paper_bound: String,
    pub bound_satisfied: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub records: Vec<ExperimentRecord>,
    /// Instance id and graph for every record whose guarantee failed.
    pub violations: Vec<(String, Graph)>,
    /// Set when oracle caps forced some instance to be skipped or reported
    /// without its oracle column.
    pub incomplete: bool,
}

pub struct BenchConfig {
    pub suite: Suite,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub workers: usize,
}

struct Instance {
    id: String,
    family: String,
    seed: Option<u64>,
    graph: Graph,
}

impl Instance {
    fn named(id: &str, family: &str, graph: Graph) -> Self {
        Instance {
            id: id.to_string(),
            family: family.to_string(),
            seed: None,
            graph,
        }
    }

    fn seeded(id: String, family: &str, seed: u64, graph: Graph) -> Self {
        Instance {
            id,
            family: family.to_string(),
            seed: Some(seed),
            graph,
        }
    }

    fn record(
        &self,
        suite: Suite,
        method: &str,
        cardinality: usize,
        oracle: Option<usize>,
        paper_bound: &str,
        bound_satisfied: bool,
        elapsed: Duration,
    ) -> ExperimentRecord {
        let profile = self.graph.degree_profile();
        ExperimentRecord {
            suite: suite.name().to_string(),
            instance: self.id.clone(),
            family: self.family.clone(),
            seed: self.seed,
            n: self.graph.n(),
            m: self.graph.edge_count(),
            min_degree: profile.min,
            max_degree: profile.max,
            method: method.to_string(),
            cardinality,
            oracle,
            ratio: oracle.map(|o| cardinality as f64 / o as f64),
            paper_bound: paper_bound.to_string(),
            bound_satisfied,
            elapsed,
        }
    }
}

// fixed cubic and quartic test graphs

pub fn prism() -> Graph {
    Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

pub fn cube() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(8, &edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5usize {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    let mut dedup = edges.clone();
    dedup.sort();
    dedup.dedup();
    Graph::new(10, &dedup).unwrap()
}

/// The 4-regular circulant on 9 vertices with spans 1 and 2.
pub fn circulant9() -> Graph {
    let mut edges = Vec::new();
    for i in 0..9usize {
        for s in [1, 2] {
            let j = (i + s) % 9;
            edges.push((i.min(j), i.max(j)));
        }
    }
    edges.sort();
    edges.dedup();
    Graph::new(9, &edges).unwrap()
}

pub fn run_suite(cfg: &BenchConfig) -> Result<SuiteReport, String> {
    let instances = match cfg.suite {
        Suite::Bounds => bounds_instances(cfg)?,
        Suite::Reg3 => regular_instances(cfg, 3)?,
        Suite::Reg4 => regular_instances(cfg, 4)?,
        Suite::Reductions => reduction_instances(cfg)?,
        Suite::Monopoly => monopoly_instances(cfg)?,
    };
    let suite = cfg.suite;
    let records = evaluate(&instances, cfg.workers, |inst| match suite {
        Suite::Bounds => bounds_records(inst),
        Suite::Reg3 => regular_records(inst, 3),
        Suite::Reg4 => regular_records(inst, 4),
        Suite::Reductions => reduction_records(inst),
        Suite::Monopoly => monopoly_records(inst),
    });
    let incomplete = records.iter().any(|r| r.oracle.is_none())
        || matches!(cfg.suite, Suite::Reductions if cfg.n_max > REDUCTION_CAP)
        || matches!(cfg.suite, Suite::Monopoly if cfg.n_max > EXHAUSTIVE_CAP);
    let mut violations = Vec::new();
    for r in records.iter().filter(|r| !r.bound_satisfied) {
        if let Some(inst) = instances.iter().find(|i| i.id == r.instance) {
            violations.push((inst.id.clone(), inst.graph.clone()));
        }
    }
    violations.dedup_by(|a, b| a.0 == b.0);
    Ok(SuiteReport {
        records,
        violations,
        incomplete,
    })
}

/// Runs `eval` over the instances with the requested worker count. Results
/// are reassembled in instance order, so the report does not depend on
/// scheduling.
fn evaluate(
    instances: &[Instance],
    workers: usize,
    eval: impl Fn(&Instance) -> Vec<ExperimentRecord> + Sync,
) -> Vec<ExperimentRecord> {
    let workers = workers.max(1);
    if workers == 1 || instances.len() <= 1 {
        return instances.iter().flat_map(&eval).collect();
    }
    let mut indexed: Vec<(usize, Vec<ExperimentRecord>)> = std::thread::scope(|scope| {
        let eval = &eval;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    instances
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, inst)| (i, eval(inst)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    indexed.sort_by_key(|&(i, _)| i);
    indexed.into_iter().flat_map(|(_, r)| r).collect()
}

fn seeded_trial(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(10_000).wrapping_add(index as u64)
}

fn bounds_instances(cfg: &BenchConfig) -> Result<Vec<Instance>, String> {
    if cfg.n_max < 4 {
        return Err("bounds suite needs --n-max >= 4".to_string());
    }
    let mut out = Vec::new();
    for n in 3..=cfg.n_max {
        out.push(Instance::named(
            &format!("cycle-{n}"),
            "cycle",
            gen::family(&Family::Cycle { n }).map_err(|e| e.to_string())?,
        ));
    }
    for n in 3..=cfg.n_max {
        out.push(Instance::named(
            &format!("complete-{n}"),
            "complete",
            gen::family(&Family::Complete { n }).map_err(|e| e.to_string())?,
        ));
    }
    for a in 2..=cfg.n_max / 2 {
        for b in a..=cfg.n_max.saturating_sub(a) {
            out.push(Instance::named(
                &format!("kb-{a}-{b}"),
                "complete-bipartite",
                gen::family(&Family::CompleteBipartite { a, b }).map_err(|e| e.to_string())?,
            ));
        }
    }
    for n in 4..=cfg.n_max {
        out.push(Instance::named(
            &format!("wheel-{n}"),
            "wheel",
            gen::family(&Family::Wheel { n }).map_err(|e| e.to_string())?,
        ));
    }
    for i in 0..cfg.trials {
        let n = 4 + i % (cfg.n_max - 3);
        let p = [0.2, 0.3, 0.4][i % 3];
        let s = seeded_trial(cfg.seed, i);
        out.push(Instance::seeded(
            format!("rand-n{n}-i{i}"),
            "random-min-degree2",
            s,
            gen::random_min_degree2(n, p, s).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

fn bounds_records(inst: &Instance) -> Vec<ExperimentRecord> {
    let start = Instant::now();
    let g = &inst.graph;
    let gamma2 = (g.n() <= GAMMA_ORACLE_CAP)
        .then(|| exact_min(g, SetProperty::DoubleDominating, None).cardinality)
        .flatten();
    let gamma_cs = (g.n() <= CSDS_ORACLE_CAP)
        .then(|| exact_min(g, SetProperty::Csds, None).cardinality)
        .flatten();
    let (cardinality, satisfied) = match (gamma2, gamma_cs) {
        (Some(d2), Some(cs)) => (d2, cs <= d2 && d2 <= 2 * cs),
        (Some(d2), None) => (d2, false),
        _ => (0, false),
    };
    vec![inst.record(
        Suite::Bounds,
        "exact",
        cardinality,
        gamma_cs,
        "gamma_cs<=gamma2<=2*gamma_cs",
        satisfied,
        start.elapsed(),
    )]
}

fn regular_instances(cfg: &BenchConfig, degree: usize) -> Result<Vec<Instance>, String> {
    let mut out = Vec::new();
    let named: Vec<(&str, Graph)> = if degree == 3 {
        vec![
            ("k4", gen::family(&Family::Complete { n: 4 }).map_err(|e| e.to_string())?),
            ("k33", gen::family(&Family::CompleteBipartite { a: 3, b: 3 }).map_err(|e| e.to_string())?),
            ("prism", prism()),
            ("cube", cube()),
            ("petersen", petersen()),
        ]
    } else {
        vec![
            ("k5", gen::family(&Family::Complete { n: 5 }).map_err(|e| e.to_string())?),
            ("circulant9", circulant9()),
            ("k44", gen::family(&Family::CompleteBipartite { a: 4, b: 4 }).map_err(|e| e.to_string())?),
        ]
    };
    for (id, g) in named {
        if g.n() <= cfg.n_max {
            out.push(Instance::named(id, "fixed", g));
        }
    }
    let sizes: Vec<usize> = if degree == 3 {
        (4..=cfg.n_max).filter(|n| n % 2 == 0).collect()
    } else {
        (5..=cfg.n_max).collect()
    };
    if sizes.is_empty() {
        return Err(format!("no feasible {degree}-regular sizes below --n-max"));
    }
    for i in 0..cfg.trials {
        let n = sizes[i % sizes.len()];
        let s = seeded_trial(cfg.seed, i);
        out.push(Instance::seeded(
            format!("rand{degree}-n{n}-i{i}"),
            "random-regular",
            s,
            gen::random_regular(n, degree, s).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

fn regular_records(inst: &Instance, degree: usize) -> Vec<ExperimentRecord> {
    let start = Instant::now();
    let g = &inst.graph;
    let n = g.n();
    let (method, bound_name, ratio_num): (&str, &str, usize) = if degree == 3 {
        ("reg3", "ratio<=8/3", 8)
    } else {
        ("reg4", "ratio<=10/3", 10)
    };
    let sweep = if degree == 3 {
        approx::approx_csds_cubic(g)
    } else {
        approx::approx_csds_quartic(g)
    };
    let result = match sweep {
        Ok(r) => r,
        Err(_) => {
            return vec![inst.record(
                if degree == 3 { Suite::Reg3 } else { Suite::Reg4 },
                method,
                0,
                None,
                bound_name,
                false,
                start.elapsed(),
            )]
        }
    };
    let set = result.set.expect("regular sweep returns a set");
    let mut ok = verify::is_csds(g, &set).verdict
        && 3 * set.len() <= 2 * n
        && result.diagnostics.is_empty();
    if degree == 4 {
        ok = ok && g.max_induced_degree(&set.complement()) <= 2;
    }
    let oracle = (n <= CSDS_ORACLE_CAP)
        .then(|| exact_min(g, SetProperty::Csds, None).cardinality)
        .flatten();
    if let Some(opt) = oracle {
        ok = ok && 3 * set.len() <= ratio_num * opt;
        ok = ok && (degree + 1) * opt >= n; // an optimum vertex covers itself and d others
    }
    vec![inst.record(
        if degree == 3 { Suite::Reg3 } else { Suite::Reg4 },
        method,
        set.len(),
        oracle,
        bound_name,
        ok,
        start.elapsed(),
    )]
}

fn reduction_instances(cfg: &BenchConfig) -> Result<Vec<Instance>, String> {
    let cap = cfg.n_max.min(REDUCTION_CAP);
    if cap < 2 {
        return Err("reductions suite needs --n-max >= 2".to_string());
    }
    let mut out = Vec::new();
    for n in 2..=cap {
        out.push(Instance::named(
            &format!("path-{n}"),
            "path",
            gen::family(&Family::Path { n }).map_err(|e| e.to_string())?,
        ));
    }
    for n in 3..=cap {
        out.push(Instance::named(
            &format!("cycle-{n}"),
            "cycle",
            gen::family(&Family::Cycle { n }).map_err(|e| e.to_string())?,
        ));
    }
    for n in 2..=cap {
        out.push(Instance::named(
            &format!("complete-{n}"),
            "complete",
            gen::family(&Family::Complete { n }).map_err(|e| e.to_string())?,
        ));
    }
    for n in 3..=cap {
        out.push(Instance::named(
            &format!("star-{n}"),
            "star",
            gen::family(&Family::Star { n }).map_err(|e| e.to_string())?,
        ));
    }
    for a in 1..=cap / 2 {
        for b in a.max(2)..=cap.saturating_sub(a) {
            out.push(Instance::named(
                &format!("kb-{a}-{b}"),
                "complete-bipartite",
                gen::family(&Family::CompleteBipartite { a, b }).map_err(|e| e.to_string())?,
            ));
        }
    }
    Ok(out)
}

fn reduction_records(inst: &Instance) -> Vec<ExperimentRecord> {
    let g = &inst.graph;
    let gamma = exact_min(g, SetProperty::Dominating, None)
        .cardinality
        .expect("domination is always feasible");
    let mut out = Vec::new();

    let start = Instant::now();
    let pebg_ok = (|| -> Option<(usize, bool)> {
        let (reduced, map) = reduce::build_pebg(g).ok()?;
        let counts = reduced.n() == 2 * g.n() + 6
            && reduced.edge_count() == g.edge_count() + 4 * g.n() + 3;
        let peo = reduce::check_peo(&reduced, &map.peo) == Ok(true);
        let opt = exact_min(&reduced, SetProperty::Csds, None);
        let card = opt.cardinality?;
        let extracted = reduce::extract_dom_pebg(&map, g, &reduced, &opt.set?).ok()?;
        Some((
            card,
            counts && peo && card == gamma + 3 && extracted.len() == card - 3,
        ))
    })();
    let (card, ok) = pebg_ok.unwrap_or((0, false));
    out.push(inst.record(
        Suite::Reductions,
        "pebg",
        card,
        Some(gamma),
        "gamma_cs(G')==gamma+3",
        ok,
        start.elapsed(),
    ));

    if g.bipartition().is_some() {
        let start = Instant::now();
        let star_ok = (|| -> Option<(usize, bool)> {
            let (reduced, map) = reduce::build_star_convex(g).ok()?;
            let counts =
                reduced.n() == g.n() + 4 && reduced.edge_count() == g.edge_count() + g.n() + 3;
            let center = reduce::is_star_center(&reduced, map.center) == Ok(true)
                && reduce::check_star_convex(&reduced).ok().flatten().is_some();
            let opt = exact_min(&reduced, SetProperty::Csds, None);
            let card = opt.cardinality?;
            let extracted = reduce::extract_dom_star(&map, g, &reduced, &opt.set?).ok()?;
            Some((
                card,
                counts && center && card == gamma + 2 && extracted.len() == card - 2,
            ))
        })();
        let (card, ok) = star_ok.unwrap_or((0, false));
        out.push(inst.record(
            Suite::Reductions,
            "star",
            card,
            Some(gamma),
            "gamma_cs(G')==gamma+2",
            ok,
            start.elapsed(),
        ));
    }
    out
}

fn monopoly_instances(cfg: &BenchConfig) -> Result<Vec<Instance>, String> {
    let cap = cfg.n_max.min(EXHAUSTIVE_CAP);
    if cap < 4 {
        return Err("monopoly suite needs --n-max >= 4".to_string());
    }
    let mut out = Vec::new();
    for (id, g) in [
        ("k4", gen::family(&Family::Complete { n: 4 }).map_err(|e| e.to_string())?),
        ("k33", gen::family(&Family::CompleteBipartite { a: 3, b: 3 }).map_err(|e| e.to_string())?),
        ("prism", prism()),
        ("cube", cube()),
        ("petersen", petersen()),
    ] {
        if g.n() <= cap {
            out.push(Instance::named(id, "fixed", g));
        }
    }
    let sizes: Vec<usize> = (4..=cap).filter(|n| n % 2 == 0).collect();
    for i in 0..cfg.trials {
        let n = sizes[i % sizes.len()];
        let s = seeded_trial(cfg.seed, i);
        out.push(Instance::seeded(
            format!("rand3-n{n}-i{i}"),
            "random-regular",
            s,
            gen::random_regular(n, 3, s).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

fn monopoly_records(inst: &Instance) -> Vec<ExperimentRecord> {
    use cosecure::graph::VertexSet;
    let start = Instant::now();
    let g = &inst.graph;
    let n = g.n();
    let mut equivalent = true;
    for mask in 0u64..1 << n {
        let m = VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        if verify::satisfies(g, &m, SetProperty::PartialMonopoly)
            != verify::satisfies(g, &m, SetProperty::DoubleDominating)
        {
            equivalent = false;
            break;
        }
    }
    let monopoly_opt = exact_min(g, SetProperty::PartialMonopoly, None).cardinality;
    let gamma2 = exact_min(g, SetProperty::DoubleDominating, None).cardinality;
    let ok = equivalent && monopoly_opt.is_some() && monopoly_opt == gamma2;
    vec![inst.record(
        Suite::Monopoly,
        "exact",
        monopoly_opt.unwrap_or(0),
        gamma2,
        "monopoly==double-domination",
        ok,
        start.elapsed(),
    )]
}

pub fn to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(
        "suite,instance,family,seed,n,m,min_degree,max_degree,method,cardinality,oracle,ratio,paper_bound,bound_satisfied\n",
    );
    for r in records {
        let seed = r.seed.map_or(String::new(), |s| s.to_string());
        let oracle = r.oracle.map_or(String::new(), |o| o.to_string());
        let ratio = r.ratio.map_or(String::new(), |x| format!("{x:.6}"));
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.suite,
            r.instance,
            r.family,
            seed,
            r.n,
            r.m,
            r.min_degree,
            r.max_degree,
            r.method,
            r.cardinality,
            oracle,
            ratio,
            r.paper_bound,
            r.bound_satisfied,
        ));
    }
    out
}

pub fn to_json(records: &[ExperimentRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite, n_max: usize, trials: usize) -> BenchConfig {
        BenchConfig {
            suite,
            n_max,
            trials,
            seed: 7,
            workers: 1,
        }
    }

    #[test]
    fn bounds_suite_holds() {
        let report = run_suite(&cfg(Suite::Bounds, 8, 6)).unwrap();
        assert!(!report.records.is_empty());
        assert!(report.records.iter().all(|r| r.bound_satisfied));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn regular_suites_hold() {
        let report = run_suite(&cfg(Suite::Reg3, 10, 5)).unwrap();
        assert!(report.records.iter().all(|r| r.bound_satisfied));
        let report = run_suite(&cfg(Suite::Reg4, 9, 5)).unwrap();
        assert!(report.records.iter().all(|r| r.bound_satisfied));
    }

    #[test]
    fn reduction_suite_holds() {
        let report = run_suite(&cfg(Suite::Reductions, 5, 0)).unwrap();
        assert!(report.records.iter().all(|r| r.bound_satisfied));
        // bipartite instances carry both reduction rows
        assert!(report.records.iter().any(|r| r.method == "star"));
    }

    #[test]
    fn monopoly_suite_holds() {
        let report = run_suite(&cfg(Suite::Monopoly, 8, 3)).unwrap();
        assert!(report.records.iter().all(|r| r.bound_satisfied));
    }

    #[test]
    fn reports_are_deterministic_across_workers() {
        for suite in [Suite::Bounds, Suite::Reg3] {
            let mut base = cfg(suite, 8, 4);
            let a = to_csv(&run_suite(&base).unwrap().records);
            base.workers = 3;
            let b = to_csv(&run_suite(&base).unwrap().records);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn named_graphs_are_regular() {
        assert_eq!(prism().degree_profile().regular, Some(3));
        assert_eq!(cube().degree_profile().regular, Some(3));
        assert_eq!(petersen().degree_profile().regular, Some(3));
        assert_eq!(circulant9().degree_profile().regular, Some(4));
    }
}
