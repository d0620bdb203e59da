use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lacas::bench::{
    batch_size_sweep, emit_csv, execute, explore, run_benchmark, write_sweep_summary,
    AlgorithmSpec, Report, RunOutput,
};
use lacas::render::{render_svg, Overlay};
use lacas::scenarios::{
    generate_instance, parse_instance, parse_manifest, serialize_instance, write_manifest, Family,
    ManifestEntry, ScenarioSpec,
};
use lacas::search::Budget;
use lacas::solution::{format_solution, parse_solution};

#[derive(Parser)]
#[command(
    name = "lacas-bench",
    version,
    about = "Generate, solve, benchmark and render any-angle pathfinding instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded instances and a manifest (`DIR/manifest.txt`).
    Gen {
        /// Family name, or a comma-separated list.
        #[arg(long)]
        family: String,
        /// `A..B` (exclusive) or `A..=B` (inclusive), or a single seed.
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        out: PathBuf,
        /// Override the family's location count.
        #[arg(long)]
        locations: Option<usize>,
    },
    /// Run algorithms over a manifest and write per-run CSV records.
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// `NAME[,flag...]`; repeat for several algorithms.
        #[arg(long = "algo", required = true)]
        algos: Vec<String>,
        /// Batch size for lazy algorithms that do not set `b=` themselves.
        #[arg(long, default_value_t = 10)]
        b: usize,
        /// Seconds per run.
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Solve one instance and write the solution file.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "lacas*")]
        algo: String,
        #[arg(long, default_value_t = 10)]
        b: usize,
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance, optional solution files and an optional search snapshot.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "solution")]
        solutions: Vec<PathBuf>,
        /// Run this algorithm and draw what it explored plus its path.
        #[arg(long)]
        explore: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
        #[arg(long, default_value_t = 800.0)]
        size: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one lazy configuration over several batch sizes.
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated batch sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[arg(long, default_value = "lacas")]
        algo: String,
        #[arg(long, default_value_t = 30.0)]
        timeout: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        csv: PathBuf,
    },
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    let (a, b, inclusive) = if let Some((a, b)) = text.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = text.split_once("..") {
        (a, b, false)
    } else {
        let s: u64 = text.parse().with_context(|| format!("bad seed `{text}`"))?;
        return Ok(vec![s]);
    };
    let a: u64 = a
        .parse()
        .with_context(|| format!("bad seed range `{text}`"))?;
    let b: u64 = b
        .parse()
        .with_context(|| format!("bad seed range `{text}`"))?;
    Ok(if inclusive {
        (a..=b).collect()
    } else {
        (a..b).collect()
    })
}

fn timeout(secs: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(secs).with_context(|| format!("bad timeout {secs}"))
}

fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_manifest(&text, base).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance(path: &Path) -> Result<lacas::ProblemInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_algo(text: &str, b: usize) -> Result<AlgorithmSpec> {
    let spec: AlgorithmSpec = text
        .parse()
        .with_context(|| format!("algorithm `{text}`"))?;
    Ok(spec.with_default_batch_size(b))
}

fn print_summary(outputs: &[RunOutput]) {
    let mut labels: Vec<&str> = Vec::new();
    for o in outputs {
        if !labels.contains(&o.record.algorithm.as_str()) {
            labels.push(&o.record.algorithm);
        }
    }
    for label in labels {
        let runs: Vec<_> = outputs
            .iter()
            .filter(|o| o.record.algorithm == label)
            .collect();
        let solved = runs.iter().filter(|o| o.record.solved).count();
        let errors = runs.iter().filter(|o| !o.record.error.is_empty()).count();
        eprintln!("{label}: solved {solved}/{} ({errors} errors)", runs.len());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            family,
            seeds,
            out,
            locations,
        } => {
            let families = family
                .split(',')
                .map(|f| f.trim().parse::<Family>())
                .collect::<Result<Vec<_>, _>>()?;
            let seeds = parse_seeds(&seeds)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut entries = Vec::new();
            for family in families {
                for &seed in &seeds {
                    let mut spec = ScenarioSpec::new(family, seed);
                    if let Some(n) = locations {
                        spec = spec.with_locations(n);
                    }
                    let name = format!("{}-{seed}.txt", family.name());
                    fs::write(
                        out.join(&name),
                        serialize_instance(&generate_instance(&spec)),
                    )
                    .with_context(|| format!("writing {name}"))?;
                    entries.push(ManifestEntry {
                        family: family.name().to_string(),
                        seed,
                        path: PathBuf::from(name),
                    });
                }
            }
            fs::write(out.join("manifest.txt"), write_manifest(&entries))?;
            eprintln!("wrote {} instances to {}", entries.len(), out.display());
        }
        Command::Run {
            manifest,
            algos,
            b,
            timeout: secs,
            workers,
            csv,
        } => {
            let entries = load_manifest(&manifest)?;
            let specs = algos
                .iter()
                .map(|a| parse_algo(a, b))
                .collect::<Result<Vec<_>>>()?;
            let outputs = run_benchmark(&entries, &specs, timeout(secs)?, workers.max(1));
            emit_csv(&outputs, &csv).with_context(|| format!("writing {}", csv.display()))?;
            print_summary(&outputs);
        }
        Command::Solve {
            instance,
            algo,
            b,
            timeout: secs,
            seed,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let spec = parse_algo(&algo, b)?;
            let report = match execute(&inst, &spec, seed, Budget::time(timeout(secs)?)) {
                Report::Graph(r) => r,
                Report::Waypoints(_) => {
                    bail!("`{algo}` returns free-space waypoints; solution files hold location ids")
                }
            };
            let text = format_solution(&report);
            match out {
                Some(path) => fs::write(&path, &text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            eprintln!(
                "{}: {} after {} iterations, {} connect calls",
                spec,
                report.outcome.kind(),
                report.iterations,
                report.connect_calls
            );
        }
        Command::Render {
            instance,
            solutions,
            explore: explore_algo,
            timeout: secs,
            size,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let mut overlay = Overlay::default();
            for path in &solutions {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let dump =
                    parse_solution(&text).with_context(|| format!("parsing {}", path.display()))?;
                if let Some(bad) = dump.path.iter().find(|v| v.index() >= inst.len()) {
                    bail!("{}: location {bad} is out of range", path.display());
                }
                let label = path
                    .file_stem()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
                overlay
                    .paths
                    .push((label, dump.path.iter().map(|&v| inst.point(v)).collect()));
            }
            if let Some(algo) = explore_algo {
                let spec = parse_algo(&algo, 10)?;
                let (report, arcs) = explore(&inst, &spec, 0, Budget::time(timeout(secs)?));
                overlay.arcs = arcs;
                if let Some(path) = report.waypoints(&inst) {
                    overlay.paths.push((spec.to_string(), path));
                }
            }
            fs::write(&out, render_svg(&inst, &overlay, size))
                .with_context(|| format!("writing {}", out.display()))?;
        }
        Command::Sweep {
            manifest,
            b,
            algo,
            timeout: secs,
            workers,
            csv,
        } => {
            let entries = load_manifest(&manifest)?;
            let spec = parse_algo(&algo, 10)?;
            if spec.batch_size().is_none() {
                bail!("`{algo}` has no batch size to sweep");
            }
            if b.contains(&0) {
                bail!("batch sizes must be positive");
            }
            let (outputs, rows) =
                batch_size_sweep(&entries, &spec, &b, timeout(secs)?, workers.max(1));
            emit_csv(&outputs, &csv).with_context(|| format!("writing {}", csv.display()))?;
            let stem = csv
                .file_stem()
                .map_or_else(|| "sweep".into(), |s| s.to_string_lossy().into_owned());
            let summary = csv.with_file_name(format!("{stem}.summary.csv"));
            write_sweep_summary(&rows, fs::File::create(&summary)?)?;
            for r in &rows {
                eprintln!(
                    "b={:<5} solved {}/{}  median #connect {}",
                    r.b,
                    r.solved,
                    r.runs,
                    r.connect_median.map_or("-".into(), |m| format!("{m:.0}"))
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
