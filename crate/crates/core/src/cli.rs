//! Command-line front end.
//!
//! Exit codes: `0` success, `1` an "invalid" verdict from `verify`, `2` usage
//! or input errors, `3` instances above the oracle cap.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::experiments::{self, SandwichReport, SharpnessRow, TrialStats};
use crate::graph::{self, Family, Graph, VertexSet};
use crate::packing::{self, PackingInstance, DEFAULT_ORACLE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

pub const ORACLE_CAP_ENV: &str = "LIMPACK_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "limpack", version, about = "k-limited packings in graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Largest graph admitted to the exact solvers.
    #[arg(long, global = true, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Complete,
    Cycle,
    Path,
    Star,
    Gnp,
    RandomRegular,
    Rook,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Check a vertex set file against a graph (exit 0 valid, 1 invalid).
    Verify(VerifyArgs),
    /// Run the randomized packing algorithm once.
    Pack(PackArgs),
    /// Exact L_k, and optionally the k-tuple domination number.
    Exact(ExactArgs),
    /// Evaluate every closed-form bound.
    Bounds(BoundsArgs),
    /// Statistical and consistency experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: usize,
    /// Degree for random-regular.
    #[arg(long)]
    pub d: Option<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge-list file, or `-` for stdin.
    pub graph: PathBuf,
    /// Vertex set file, one index per line.
    pub set: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Check k-tuple domination instead of the packing condition.
    #[arg(long)]
    pub ktuple: bool,
}

#[derive(Debug, Args)]
pub struct PackArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Also compute a minimum k-tuple dominating set.
    #[arg(long)]
    pub ktuple: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Attach the exact k-tuple domination number as an upper bound.
    #[arg(long)]
    pub ktuple: bool,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Repeated randomized runs with per-trial seeds derived from `--seed`.
    Trials {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact solvers against every bound over the seeded corpus.
    Sandwich {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower/upper coefficient ratio on regular graphs with k = max degree.
    Sharpness {
        /// Largest k in the sweep.
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackOutput {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub size: usize,
    pub set: Vec<usize>,
    pub is_maximal: bool,
    pub lower_bound: Option<f64>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactOutput {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub size: usize,
    pub set: Vec<usize>,
    pub ktuple_size: Option<usize>,
    pub ktuple_set: Option<Vec<usize>>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyOutput {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub condition: String,
    pub valid: bool,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessOutput {
    pub k_max: usize,
    pub rows: Vec<SharpnessRow>,
}

/// Rounds to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run(&config, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Capacity(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CAPACITY
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    Ok(text)
}

fn load_graph(path: &Path) -> Result<Graph> {
    graph::parse_graph(&read_input(path)?)
}

/// Vertex-set file: one decimal index per line; blank and `#` lines ignored.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut vertices = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: usize = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("'{line}' is not a vertex index"),
        })?;
        if v >= n {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("vertex {v} out of range for n = {n}"),
            });
        }
        vertices.push(v);
    }
    VertexSet::from_vertices(n, vertices)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_csv<T: Serialize>(
    out: &mut dyn Write,
    rows: impl IntoIterator<Item = T>,
) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"))
}

fn run(config: &RunConfig, out: &mut dyn Write) -> CliResult<i32> {
    let format = config.format;
    let cap = config.oracle_cap;
    match &config.command {
        Command::Gen(args) => {
            let family = family_from_args(args)?;
            write!(out, "{}", graph::write_graph(&family.generate()?))?;
        }
        Command::Verify(args) => return verify(args, format, out),
        Command::Pack(args) => {
            let g = load_graph(&args.graph)?;
            let inst = PackingInstance::new(&g, args.k)?;
            let r = packing::randomized_packing(&inst, args.seed)?;
            let output = PackOutput {
                n: g.n(),
                m: g.m(),
                k: args.k,
                seed: args.seed,
                size: r.size,
                set: r.set.to_vec(),
                is_maximal: r.is_maximal,
                lower_bound: bounds::probabilistic_lower_bound(g.n(), g.max_degree()?, args.k)
                    .map(round_sig12),
            };
            match format {
                OutputFormat::Json => write_json(out, &output)?,
                OutputFormat::Csv => write_csv(out, output.set.iter().map(|&v| [v]))?,
                OutputFormat::Text => {
                    writeln!(out, "size {}", output.size)?;
                    writeln!(out, "set {}", join(&output.set))?;
                    writeln!(out, "lower_bound {}", fmt_opt(output.lower_bound))?;
                }
            }
        }
        Command::Exact(args) => {
            let g = load_graph(&args.graph)?;
            let inst = PackingInstance::new(&g, args.k)?;
            let lk = packing::exact_lk(&inst, cap)?;
            let ktuple = if args.ktuple {
                Some(packing::exact_ktuple_domination(&inst, cap)?)
            } else {
                None
            };
            let output = ExactOutput {
                n: g.n(),
                m: g.m(),
                k: args.k,
                size: lk.size,
                set: lk.set.to_vec(),
                ktuple_size: ktuple.as_ref().map(|r| r.size),
                ktuple_set: ktuple.as_ref().map(|r| r.set.to_vec()),
            };
            match format {
                OutputFormat::Json => write_json(out, &output)?,
                OutputFormat::Csv => write_csv(out, output.set.iter().map(|&v| [v]))?,
                OutputFormat::Text => {
                    writeln!(out, "L_{} {}", args.k, output.size)?;
                    writeln!(out, "set {}", join(&output.set))?;
                    if let (Some(size), Some(set)) = (output.ktuple_size, &output.ktuple_set) {
                        writeln!(out, "ktuple_domination {size}")?;
                        writeln!(out, "ktuple_set {}", join(set))?;
                    }
                }
            }
        }
        Command::Bounds(args) => {
            let g = load_graph(&args.graph)?;
            let gamma = if args.ktuple {
                let inst = PackingInstance::new(&g, args.k)?;
                match packing::exact_ktuple_domination(&inst, cap) {
                    Ok(r) => Some(r.size),
                    Err(Error::Undefined(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let mut report = bounds::bound_report_with_ktuple(&g, args.k, gamma)?;
            for e in &mut report.entries {
                e.value = e.value.map(round_sig12);
            }
            write_bounds(out, format, &report)?;
        }
        Command::Experiment(cmd) => experiment(cmd, format, cap, out)?,
    }
    Ok(EXIT_OK)
}

fn family_from_args(args: &GenArgs) -> CliResult<Family> {
    let n = args.n;
    let need = |what: &str| Failure::Usage(format!("--{what} is required for this family"));
    Ok(match args.family {
        FamilyName::Complete => Family::Complete { n },
        FamilyName::Cycle => Family::Cycle { n },
        FamilyName::Path => Family::Path { n },
        FamilyName::Star => Family::Star { n },
        FamilyName::Rook => Family::Rook { n },
        FamilyName::Gnp => Family::Gnp {
            n,
            p: args.p.ok_or_else(|| need("p"))?,
            seed: args.seed,
        },
        FamilyName::RandomRegular => Family::RandomRegular {
            n,
            d: args.d.ok_or_else(|| need("d"))?,
            seed: args.seed,
        },
    })
}

fn verify(args: &VerifyArgs, format: OutputFormat, out: &mut dyn Write) -> CliResult<i32> {
    let g = load_graph(&args.graph)?;
    let set = parse_vertex_set(&read_input(&args.set)?, g.n())?;
    let inst = PackingInstance::new(&g, args.k)?;
    let (valid, condition) = if args.ktuple {
        (
            packing::verify_ktuple_dominating(&inst, &set)?,
            "ktuple_dominating",
        )
    } else {
        (packing::verify_packing(&inst, &set)?, "packing")
    };
    let output = VerifyOutput {
        n: g.n(),
        k: args.k,
        size: set.len(),
        condition: condition.to_string(),
        valid,
    };
    match format {
        OutputFormat::Json => write_json(out, &output)?,
        OutputFormat::Csv => write_csv(out, [&output])?,
        OutputFormat::Text => writeln!(out, "{}", if valid { "valid" } else { "invalid" })?,
    }
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

fn write_bounds(out: &mut dyn Write, format: OutputFormat, report: &BoundReport) -> CliResult<()> {
    match format {
        OutputFormat::Json => write_json(out, report)?,
        OutputFormat::Csv => write_csv(out, &report.entries)?,
        OutputFormat::Text => {
            writeln!(
                out,
                "n {} m {} k {} max_degree {} min_degree {} connected {}",
                report.n, report.m, report.k, report.delta_max, report.delta_min, report.connected
            )?;
            for e in &report.entries {
                let kind = serde_json::to_value(e.kind).expect("enum serializes");
                writeln!(
                    out,
                    "{:<28} {:<6} {:>16}  [{}]",
                    e.name,
                    kind.as_str().unwrap_or_default(),
                    fmt_opt(e.value),
                    e.precondition
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TrialRow {
    trial: usize,
    seed: u64,
    size: usize,
}

fn experiment(
    cmd: &ExperimentCommand,
    format: OutputFormat,
    cap: usize,
    out: &mut dyn Write,
) -> CliResult<()> {
    match cmd {
        ExperimentCommand::Trials {
            graph,
            k,
            trials,
            seed,
        } => {
            let g = load_graph(graph)?;
            let inst = PackingInstance::new(&g, *k)?;
            let mut stats: TrialStats = experiments::run_trials(&inst, *trials, *seed)?;
            stats.mean = round_sig12(stats.mean);
            stats.lower_bound = stats.lower_bound.map(round_sig12);
            match format {
                OutputFormat::Json => write_json(out, &stats)?,
                OutputFormat::Csv => write_csv(
                    out,
                    stats.sizes.iter().enumerate().map(|(i, &size)| TrialRow {
                        trial: i,
                        seed: experiments::trial_seed(*seed, i as u64),
                        size,
                    }),
                )?,
                OutputFormat::Text => {
                    writeln!(
                        out,
                        "trials {} max {} mean {} min {}",
                        stats.trials, stats.max, stats.mean, stats.min
                    )?;
                    writeln!(out, "lower_bound {}", fmt_opt(stats.lower_bound))?;
                }
            }
        }
        ExperimentCommand::Sandwich { seed } => {
            let corpus = experiments::default_corpus(*seed)?;
            let report: SandwichReport = experiments::sandwich_sweep(&corpus, cap)?;
            match format {
                OutputFormat::Json => write_json(out, &report)?,
                OutputFormat::Csv => write_csv(out, &report.rows)?,
                OutputFormat::Text => {
                    writeln!(
                        out,
                        "instances {} skipped {} violations {}",
                        report.rows.len(),
                        report.skipped,
                        report.violations.len()
                    )?;
                    for v in &report.violations {
                        writeln!(out, "violation {v}")?;
                    }
                }
            }
        }
        ExperimentCommand::Sharpness { k } => {
            let mut rows = experiments::sharpness_sweep(*k)?;
            for r in &mut rows {
                r.ratio = round_sig12(r.ratio);
            }
            match format {
                OutputFormat::Json => write_json(out, &SharpnessOutput { k_max: *k, rows })?,
                OutputFormat::Csv => write_csv(out, &rows)?,
                OutputFormat::Text => {
                    for r in &rows {
                        writeln!(out, "{} {}", r.k, r.ratio)?;
                    }
                }
            }
        }
    }
    Ok(())
}
