//! Benchmark harness: algorithm specs, per-run metrics, CSV output and
//! batch-size sweeps.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baselines::{
    astar_search, dfs_search, gbfs_search, pe_search, rrt_connect_search,
    rrt_connect_search_with_trees, rrt_search, rrt_search_with_tree, RrtParams, SuccessorMode,
};
use crate::geometry::{ConnectOracle, Point, ProblemInstance};
use crate::neighbor_index::NeighborIndex;
use crate::scenarios::{parse_instance, ManifestEntry};
use crate::search::{
    lacas_search, BatchOrder, Budget, Improvement, Lacas, SearchConfig, SearchOutcome, SearchReport,
};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmKind {
    /// The lazy search; `pe` swaps the k-d tree for full per-node sorts.
    Lazy {
        config: SearchConfig,
        pe: bool,
    },
    BestFirst {
        greedy: bool,
        mode: SuccessorMode,
    },
    Dfs,
    Rrt {
        bidirectional: bool,
        step: f64,
    },
}

/// An algorithm name plus flags, e.g. `lacas*`, `lacas,random,-rolling`, `astar-k,k=5`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub label: String,
    pub kind: AlgorithmKind,
    /// Seed for randomised parts (batch shuffles, sampling); defaults to the instance seed.
    pub seed: Option<u64>,
    batch_size_fixed: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("flag `{flag}` does not apply to `{algorithm}`")]
    UnknownFlag { algorithm: String, flag: String },
    #[error("bad value in `{0}`")]
    BadValue(String),
}

impl FromStr for AlgorithmSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(',').map(str::trim).filter(|p| !p.is_empty());
        let name = parts
            .next()
            .ok_or_else(|| SpecError::UnknownAlgorithm(s.to_string()))?;
        let mut kind = match name {
            "lacas" => AlgorithmKind::Lazy {
                config: SearchConfig::lacas(),
                pe: false,
            },
            "lacas*" => AlgorithmKind::Lazy {
                config: SearchConfig::lacas_star(),
                pe: false,
            },
            "lacat" => AlgorithmKind::Lazy {
                config: SearchConfig::lacat(),
                pe: false,
            },
            "lacat*" => AlgorithmKind::Lazy {
                config: SearchConfig::lacat_star(),
                pe: false,
            },
            "minimal" => AlgorithmKind::Lazy {
                config: SearchConfig::minimal(),
                pe: false,
            },
            "pe" => AlgorithmKind::Lazy {
                config: SearchConfig::lacas(),
                pe: true,
            },
            "astar" => AlgorithmKind::BestFirst {
                greedy: false,
                mode: SuccessorMode::All,
            },
            "astar-k" => AlgorithmKind::BestFirst {
                greedy: false,
                mode: SuccessorMode::KNearest(SuccessorMode::DEFAULT_K),
            },
            "astar-r" => AlgorithmKind::BestFirst {
                greedy: false,
                mode: SuccessorMode::Radius(SuccessorMode::DEFAULT_R),
            },
            "gbfs" => AlgorithmKind::BestFirst {
                greedy: true,
                mode: SuccessorMode::All,
            },
            "gbfs-k" => AlgorithmKind::BestFirst {
                greedy: true,
                mode: SuccessorMode::KNearest(SuccessorMode::DEFAULT_K),
            },
            "gbfs-r" => AlgorithmKind::BestFirst {
                greedy: true,
                mode: SuccessorMode::Radius(SuccessorMode::DEFAULT_R),
            },
            "dfs" => AlgorithmKind::Dfs,
            "rrt" => AlgorithmKind::Rrt {
                bidirectional: false,
                step: 0.1,
            },
            "rrt-connect" | "rrt-c" => AlgorithmKind::Rrt {
                bidirectional: true,
                step: 0.1,
            },
            other => return Err(SpecError::UnknownAlgorithm(other.to_string())),
        };
        let mut seed = None;
        let mut batch_size_fixed = false;
        for flag in parts {
            let unknown = || SpecError::UnknownFlag {
                algorithm: name.to_string(),
                flag: flag.to_string(),
            };
            let bad = || SpecError::BadValue(flag.to_string());
            if let Some(v) = flag.strip_prefix("seed=") {
                seed = Some(v.parse().map_err(|_| bad())?);
                continue;
            }
            match &mut kind {
                AlgorithmKind::Lazy { config, .. } => {
                    let (on, key) = match flag.strip_prefix('-') {
                        Some(rest) => (false, rest),
                        None => (true, flag.strip_prefix('+').unwrap_or(flag)),
                    };
                    match key {
                        "random" => config.batch_order = BatchOrder::Random { seed: 0 },
                        "sorted" => config.batch_order = BatchOrder::GoalSorted,
                        "nearest" => config.batch_order = BatchOrder::Nearest,
                        "reinsert" => config.reinsert = on,
                        "rolling" => config.rolling = on,
                        "gp" | "grandparent" => config.grandparent = on,
                        "anytime" => config.anytime = on,
                        _ => match key.strip_prefix("b=") {
                            Some(v) => {
                                let b: usize = v.parse().map_err(|_| bad())?;
                                if b == 0 {
                                    return Err(bad());
                                }
                                config.batch_size = b;
                                batch_size_fixed = true;
                            }
                            None => return Err(unknown()),
                        },
                    }
                }
                AlgorithmKind::BestFirst { mode, .. } => match (flag.split_once('='), mode) {
                    (Some(("k", v)), SuccessorMode::KNearest(k)) => {
                        *k = v.parse().ok().filter(|&k| k > 0).ok_or_else(bad)?
                    }
                    (Some(("r", v)), SuccessorMode::Radius(r)) => {
                        *r = v.parse().ok().filter(|&r: &f64| r > 0.0).ok_or_else(bad)?
                    }
                    _ => return Err(unknown()),
                },
                AlgorithmKind::Rrt { step, .. } => match flag.strip_prefix("step=") {
                    Some(v) => *step = v.parse().ok().filter(|&s: &f64| s > 0.0).ok_or_else(bad)?,
                    None => return Err(unknown()),
                },
                AlgorithmKind::Dfs => return Err(unknown()),
            }
        }
        Ok(AlgorithmSpec {
            label: s.trim().to_string(),
            kind,
            seed,
            batch_size_fixed,
        })
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl AlgorithmSpec {
    /// Sets the batch size unless the spec pinned one with `b=`.
    pub fn with_default_batch_size(mut self, b: usize) -> Self {
        if let AlgorithmKind::Lazy { config, .. } = &mut self.kind {
            if !self.batch_size_fixed {
                config.batch_size = b;
            }
        }
        self
    }

    pub fn batch_size(&self) -> Option<usize> {
        match &self.kind {
            AlgorithmKind::Lazy { config, .. } => Some(config.batch_size),
            _ => None,
        }
    }

    /// Compact description of the active options.
    pub fn flags(&self) -> String {
        match &self.kind {
            AlgorithmKind::Lazy { config, pe } => {
                let mut f = vec![match config.batch_order {
                    BatchOrder::Nearest => "nearest",
                    BatchOrder::Random { .. } => "random",
                    BatchOrder::GoalSorted => "sorted",
                }];
                for (on, name) in [
                    (config.reinsert, "reinsert"),
                    (config.rolling, "rolling"),
                    (config.grandparent, "gp"),
                    (config.anytime, "anytime"),
                    (*pe, "pe"),
                ] {
                    if on {
                        f.push(name);
                    }
                }
                f.join("+")
            }
            AlgorithmKind::BestFirst { mode, .. } => match mode {
                SuccessorMode::All => "all".to_string(),
                SuccessorMode::KNearest(k) => format!("k={k}"),
                SuccessorMode::Radius(r) => format!("r={r}"),
            },
            AlgorithmKind::Dfs => String::new(),
            AlgorithmKind::Rrt { step, .. } => format!("step={step}"),
        }
    }
}

/// Metrics of one (instance, algorithm) run. Field order is the CSV column order.
///
/// `connect_calls` and `iterations` are measured up to the first solution when
/// one was found, otherwise over the whole run; the `total_` columns always
/// cover the whole run. Sampling planners count obstacle queries as connect calls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: usize,
    pub scenario: String,
    pub seed: u64,
    pub algorithm: String,
    pub flags: String,
    pub b: Option<usize>,
    pub solved: bool,
    pub time_to_first_solution: Option<f64>,
    pub first_cost: Option<f64>,
    pub final_cost: Option<f64>,
    pub proven_optimal: bool,
    pub connect_calls: u64,
    pub iterations: u64,
    pub total_connect_calls: u64,
    pub total_iterations: u64,
    pub elapsed: f64,
    pub outcome: String,
    pub error: String,
}

impl RunRecord {
    pub const FIELDS: [&'static str; 18] = [
        "run_id",
        "scenario",
        "seed",
        "algorithm",
        "flags",
        "b",
        "solved",
        "time_to_first_solution",
        "first_cost",
        "final_cost",
        "proven_optimal",
        "connect_calls",
        "iterations",
        "total_connect_calls",
        "total_iterations",
        "elapsed",
        "outcome",
        "error",
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub record: RunRecord,
    pub improvements: Vec<Improvement>,
}

fn record_from<P>(
    scenario: &str,
    seed: u64,
    spec: &AlgorithmSpec,
    report: &SearchReport<P>,
) -> RunRecord {
    let first = report.improvements.first();
    RunRecord {
        run_id: 0,
        scenario: scenario.to_string(),
        seed,
        algorithm: spec.label.clone(),
        flags: spec.flags(),
        b: spec.batch_size(),
        solved: report.outcome.is_solution(),
        time_to_first_solution: first.map(|i| i.elapsed.as_secs_f64()),
        first_cost: first.map(|i| i.cost),
        final_cost: report.outcome.cost(),
        proven_optimal: matches!(
            report.outcome,
            SearchOutcome::Solution {
                proven_optimal: true,
                ..
            }
        ),
        connect_calls: first.map_or(report.connect_calls, |i| i.connect_calls),
        iterations: first.map_or(report.iterations, |i| i.iteration),
        total_connect_calls: report.connect_calls,
        total_iterations: report.iterations,
        elapsed: report.elapsed.as_secs_f64(),
        outcome: report.outcome.kind().to_string(),
        error: String::new(),
    }
}

/// Result of one run; sampling planners return free-space waypoints.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Graph(SearchReport),
    Waypoints(SearchReport<Point>),
}

impl Report {
    /// The solution as coordinates, whatever the planner kind.
    pub fn waypoints(&self, instance: &ProblemInstance) -> Option<Vec<Point>> {
        match self {
            Report::Graph(r) => r
                .outcome
                .path()
                .map(|p| p.iter().map(|&v| instance.point(v)).collect()),
            Report::Waypoints(r) => r.outcome.path().map(<[Point]>::to_vec),
        }
    }
}

/// Runs one algorithm on one instance with a fresh oracle and counter.
/// `seed` feeds randomised parts unless the spec pins `seed=`.
pub fn execute(
    instance: &ProblemInstance,
    spec: &AlgorithmSpec,
    seed: u64,
    budget: Budget,
) -> Report {
    let oracle = ConnectOracle::new(instance);
    let seed = spec.seed.unwrap_or(seed);
    match &spec.kind {
        AlgorithmKind::Lazy { config, pe } => {
            let mut config = config.clone();
            config.budget = budget;
            if let BatchOrder::Random { .. } = config.batch_order {
                config.batch_order = BatchOrder::Random { seed };
            }
            Report::Graph(if *pe {
                pe_search(&oracle, config)
            } else {
                let index = NeighborIndex::build(instance);
                lacas_search(&oracle, &index, config)
            })
        }
        AlgorithmKind::BestFirst { greedy, mode } => {
            let index = NeighborIndex::build(instance);
            Report::Graph(if *greedy {
                gbfs_search(&oracle, &index, *mode, budget)
            } else {
                astar_search(&oracle, &index, *mode, budget)
            })
        }
        AlgorithmKind::Dfs => Report::Graph(dfs_search(&oracle, budget)),
        AlgorithmKind::Rrt {
            bidirectional,
            step,
        } => {
            let params = RrtParams {
                step: *step,
                goal_connect: true,
                seed,
            };
            Report::Waypoints(if *bidirectional {
                rrt_connect_search(&oracle, params, budget)
            } else {
                rrt_search(&oracle, params, budget)
            })
        }
    }
}

/// Like [`execute`], also returning the explored arcs for rendering: the
/// discovered graph for the lazy search, the trees for sampling planners and
/// nothing for the other baselines.
pub fn explore(
    instance: &ProblemInstance,
    spec: &AlgorithmSpec,
    seed: u64,
    budget: Budget,
) -> (Report, Vec<(Point, Point)>) {
    let oracle = ConnectOracle::new(instance);
    let seed = spec.seed.unwrap_or(seed);
    match &spec.kind {
        AlgorithmKind::Lazy { config, pe: false } => {
            let mut config = config.clone();
            config.budget = budget;
            if let BatchOrder::Random { .. } = config.batch_order {
                config.batch_order = BatchOrder::Random { seed };
            }
            let index = NeighborIndex::build(instance);
            let mut search = Lacas::with_index(&oracle, &index, config);
            let report = search.run();
            let arcs = search
                .discovered_arcs()
                .into_iter()
                .chain(search.tree_arcs())
                .map(|(u, v)| (instance.point(u), instance.point(v)))
                .collect();
            (Report::Graph(report), arcs)
        }
        AlgorithmKind::Rrt {
            bidirectional,
            step,
        } => {
            let params = RrtParams {
                step: *step,
                goal_connect: true,
                seed,
            };
            if *bidirectional {
                let (report, trees) = rrt_connect_search_with_trees(&oracle, params, budget);
                let arcs = trees.iter().flat_map(|t| t.edges()).collect();
                (Report::Waypoints(report), arcs)
            } else {
                let (report, tree) = rrt_search_with_tree(&oracle, params, budget);
                let arcs = tree.edges().collect();
                (Report::Waypoints(report), arcs)
            }
        }
        _ => (execute(instance, spec, seed, budget), Vec::new()),
    }
}

pub fn run_on_instance(
    scenario: &str,
    seed: u64,
    instance: &ProblemInstance,
    spec: &AlgorithmSpec,
    budget: Budget,
) -> RunOutput {
    match execute(instance, spec, seed, budget) {
        Report::Graph(r) => output(scenario, seed, spec, r),
        Report::Waypoints(r) => output(scenario, seed, spec, r),
    }
}

fn output<P>(
    scenario: &str,
    seed: u64,
    spec: &AlgorithmSpec,
    report: SearchReport<P>,
) -> RunOutput {
    RunOutput {
        record: record_from(scenario, seed, spec, &report),
        improvements: report.improvements,
    }
}

fn error_output(entry: &ManifestEntry, spec: &AlgorithmSpec, message: String) -> RunOutput {
    RunOutput {
        record: RunRecord {
            run_id: 0,
            scenario: entry.family.clone(),
            seed: entry.seed,
            algorithm: spec.label.clone(),
            flags: spec.flags(),
            b: spec.batch_size(),
            solved: false,
            time_to_first_solution: None,
            first_cost: None,
            final_cost: None,
            proven_optimal: false,
            connect_calls: 0,
            iterations: 0,
            total_connect_calls: 0,
            total_iterations: 0,
            elapsed: 0.0,
            outcome: "error".to_string(),
            error: message,
        },
        improvements: Vec::new(),
    }
}

fn load(entry: &ManifestEntry) -> Result<ProblemInstance, String> {
    let text =
        fs::read_to_string(&entry.path).map_err(|e| format!("{}: {e}", entry.path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", entry.path.display()))
}

fn run_jobs<T: Sync, R: Send>(
    jobs: &[T],
    workers: usize,
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if workers > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                return pool.install(|| jobs.par_iter().map(&f).collect());
            }
        }
    }
    let _ = workers;
    jobs.iter().map(f).collect()
}

/// One record per (manifest entry, algorithm), in manifest-major order.
/// Unreadable instances become `error` records; the harness keeps going.
pub fn run_benchmark(
    entries: &[ManifestEntry],
    algorithms: &[AlgorithmSpec],
    timeout: Duration,
    workers: usize,
) -> Vec<RunOutput> {
    let jobs: Vec<(usize, &ManifestEntry, &AlgorithmSpec)> = entries
        .iter()
        .flat_map(|e| algorithms.iter().map(move |a| (e, a)))
        .enumerate()
        .map(|(i, (e, a))| (i, e, a))
        .collect();
    run_jobs(&jobs, workers, |&(run_id, entry, spec)| {
        let mut out = match load(entry) {
            Ok(instance) => run_on_instance(
                &entry.family,
                entry.seed,
                &instance,
                spec,
                Budget::time(timeout),
            ),
            Err(message) => error_output(entry, spec, message),
        };
        out.record.run_id = run_id;
        out
    })
}

/// Sibling file holding the improvement streams: `runs.csv` -> `runs.improvements.csv`.
pub fn improvements_path(csv_path: &Path) -> PathBuf {
    let stem = csv_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("runs");
    csv_path.with_file_name(format!("{stem}.improvements.csv"))
}

pub fn write_records<W: io::Write>(records: &[RunRecord], writer: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    w.write_record(RunRecord::FIELDS)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: io::Read>(reader: R) -> Result<Vec<RunRecord>, csv::Error> {
    csv::Reader::from_reader(reader).deserialize().collect()
}

/// Writes the records CSV and the sibling improvement-stream CSV.
pub fn emit_csv(outputs: &[RunOutput], path: &Path) -> Result<(), csv::Error> {
    let records: Vec<RunRecord> = outputs.iter().map(|o| o.record.clone()).collect();
    write_records(&records, fs::File::create(path)?)?;
    let mut w = csv::Writer::from_path(improvements_path(path))?;
    w.write_record(["run_id", "elapsed", "iteration", "cost", "connect_calls"])?;
    for o in outputs {
        for imp in &o.improvements {
            w.write_record([
                o.record.run_id.to_string(),
                imp.elapsed.as_secs_f64().to_string(),
                imp.iteration.to_string(),
                imp.cost.to_string(),
                imp.connect_calls.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Median and quartiles by linear interpolation between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
}

pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(Summary {
        count: v.len(),
        mean: v.iter().sum::<f64>() / v.len() as f64,
        q1: quantile(&v, 0.25),
        median: quantile(&v, 0.5),
        q3: quantile(&v, 0.75),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub b: usize,
    pub runs: usize,
    pub solved: usize,
    pub connect_median: Option<f64>,
    pub connect_q1: Option<f64>,
    pub connect_q3: Option<f64>,
    pub time_median: Option<f64>,
    pub cost_median: Option<f64>,
}

/// Aggregates solved runs per batch size (first-solution metrics).
pub fn sweep_summary(records: &[RunRecord], b_values: &[usize]) -> Vec<SweepRow> {
    b_values
        .iter()
        .map(|&b| {
            let runs: Vec<&RunRecord> = records.iter().filter(|r| r.b == Some(b)).collect();
            let solved: Vec<&&RunRecord> = runs.iter().filter(|r| r.solved).collect();
            let connect = summarize(
                &solved
                    .iter()
                    .map(|r| r.connect_calls as f64)
                    .collect::<Vec<_>>(),
            );
            let time = summarize(
                &solved
                    .iter()
                    .filter_map(|r| r.time_to_first_solution)
                    .collect::<Vec<_>>(),
            );
            let cost = summarize(
                &solved
                    .iter()
                    .filter_map(|r| r.first_cost)
                    .collect::<Vec<_>>(),
            );
            SweepRow {
                b,
                runs: runs.len(),
                solved: solved.len(),
                connect_median: connect.map(|s| s.median),
                connect_q1: connect.map(|s| s.q1),
                connect_q3: connect.map(|s| s.q3),
                time_median: time.map(|s| s.median),
                cost_median: cost.map(|s| s.median),
            }
        })
        .collect()
}

/// Runs `base` once per batch size over the manifest.
pub fn batch_size_sweep(
    entries: &[ManifestEntry],
    base: &AlgorithmSpec,
    b_values: &[usize],
    timeout: Duration,
    workers: usize,
) -> (Vec<RunOutput>, Vec<SweepRow>) {
    let specs: Vec<AlgorithmSpec> = b_values
        .iter()
        .map(|&b| {
            let mut s = base.clone();
            s.batch_size_fixed = false;
            s.with_default_batch_size(b)
        })
        .collect();
    let outputs = run_benchmark(entries, &specs, timeout, workers);
    let records: Vec<RunRecord> = outputs.iter().map(|o| o.record.clone()).collect();
    let summary = sweep_summary(&records, b_values);
    (outputs, summary)
}

pub fn write_sweep_summary<W: io::Write>(rows: &[SweepRow], writer: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
