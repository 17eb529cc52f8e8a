//! Command-line harness: instance generation, seed sweeps, verification of
//! stored results, and the lower-bound construction.

mod experiment;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use experiment::{
    generate, mean_weight, named_graph, rows_to_csv, run_algorithm, run_experiment, thread_cap,
    trial_seed, AlgorithmSpec, ExperimentConfig, Family, GeneratorSpec, Row, SeedRange,
};
pub use verify::{verify_result, Check};

use crate::graph::{build_lower_bound_graph, write_graph, GraphError};
use crate::mds_det::{Algorithm, DominatingSetResult, RunOptions};
use crate::rational::RationalParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("algorithm: {0}")]
    Algorithm(String),
}

impl From<RationalParseError> for CliError {
    fn from(e: RationalParseError) -> Self {
        CliError::InvalidConfig(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "arbodom",
    version,
    about = "Distributed dominating-set experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance in the graph text format.
    Gen(GenArgs),
    /// Run an algorithm over a seed range and emit one CSV row per trial.
    Run(RunArgs),
    /// Re-check a stored result against its graph.
    Verify(VerifyArgs),
    /// Build the lower-bound graph of a base graph, with a role sidecar.
    LbConstruct(LbArgs),
    /// Time the algorithms on growing instances.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub alpha: u32,
    #[arg(long, default_value_t = 1)]
    pub weight_max: u64,
    #[arg(long, default_value_t = 0)]
    pub delta: usize,
    /// Edge probability for `gnp`, as `p/q`.
    #[arg(long)]
    pub p: Option<String>,
    /// Base graph for `lower-bound`: K4, C5, P3, S4, petersen or a file.
    #[arg(long)]
    pub base: Option<String>,
}

impl GeneratorArgs {
    fn spec(&self) -> Option<GeneratorSpec> {
        self.family.map(|family| GeneratorSpec {
            family,
            n: self.n,
            alpha: self.alpha,
            weight_max: self.weight_max,
            delta: self.delta,
            p: self.p.clone(),
            base: self.base.clone(),
        })
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON experiment config; other flags are ignored when given.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Graph file (or named graph) used when no family is given.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub algo: Option<Algorithm>,
    /// `p/q`.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_verify: bool,
    /// Also write the result of the first trial as JSON.
    #[arg(long)]
    pub result: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub result: PathBuf,
}

#[derive(Debug, Args)]
pub struct LbArgs {
    /// K4, C5, P3, S4, petersen or a graph file.
    #[arg(long)]
    pub base: String,
    /// Graph output; roles go to `<out>.roles`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "16,64,256")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub alpha: u32,
    #[arg(long, default_value = "1/2")]
    pub eps: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn config_from_args(args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        return serde_json::from_str(&text).map_err(|e| CliError::InvalidConfig(e.to_string()));
    }
    let name = args
        .algo
        .ok_or_else(|| CliError::InvalidConfig("--algo or --config is required".into()))?;
    Ok(ExperimentConfig {
        generator: args.generator.spec(),
        graph: args.graph.as_ref().map(PathBuf::from),
        algorithm: AlgorithmSpec {
            name,
            eps: args.eps.clone(),
            t: args.t,
            k: args.k,
        },
        seeds: SeedRange {
            start: args.seed,
            end: args.seed.saturating_add(args.seeds),
        },
        trials: args.trials,
        output: args.out.clone(),
        verify: !args.no_verify,
    })
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args
        .generator
        .spec()
        .ok_or_else(|| CliError::InvalidConfig("--family is required".into()))?;
    let (g, h) = generate(&spec, args.seed)?;
    write_out(&args.out, &write_graph(&g))?;
    if let Some(h) = h {
        write_out(&roles_path(&args.out), &h.roles_text())?;
    }
    writeln!(out, "wrote {} nodes, {} edges", g.n(), g.m())?;
    Ok(EXIT_OK)
}

pub fn roles_path(graph: &Path) -> PathBuf {
    let mut name = graph.as_os_str().to_owned();
    name.push(".roles");
    PathBuf::from(name)
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = config_from_args(args)?;
    config.validate()?;
    let rows = run_experiment(&config)?;
    let csv = rows_to_csv(&rows)?;
    match &config.output {
        Some(path) => write_out(path, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(path) = &args.result {
        let g = match &config.generator {
            Some(spec) => generate(spec, config.seeds.start)?.0,
            None => named_graph(&config.graph.as_ref().unwrap().to_string_lossy())?,
        };
        let mut opts = RunOptions::seeded(trial_seed(config.seeds.start, 0));
        let result = run_algorithm(&g, &config.algorithm, &mut opts)?;
        let json = serde_json::to_string_pretty(&result).expect("results serialize");
        write_out(path, &json)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = named_graph(&args.graph)?;
    let text = std::fs::read_to_string(&args.result)?;
    let result: DominatingSetResult =
        serde_json::from_str(&text).map_err(|e| CliError::InvalidConfig(e.to_string()))?;
    let checks = verify_result(&g, &result);
    for c in &checks {
        writeln!(out, "{}", c.line())?;
    }
    Ok(if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_lb(args: &LbArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let base = named_graph(&args.base)?;
    let h = build_lower_bound_graph(&base)?;
    write_out(&args.out, &write_graph(&h.graph))?;
    write_out(&roles_path(&args.out), &h.roles_text())?;
    writeln!(
        out,
        "base n={} m={} delta={}: {} nodes, {} edges",
        h.base_n,
        h.base_m,
        h.base_delta,
        h.graph.n(),
        h.graph.m()
    )?;
    Ok(EXIT_OK)
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    writeln!(out, "algo,n,m,rounds,weight,millis")?;
    for &n in &args.sizes {
        let spec = GeneratorSpec {
            family: Family::Arboricity,
            n,
            alpha: args.alpha,
            weight_max: 1,
            delta: 0,
            p: None,
            base: None,
        };
        let (g, _) = generate(&spec, args.seed)?;
        for name in [
            Algorithm::Det,
            Algorithm::Unweighted,
            Algorithm::UnknownDelta,
            Algorithm::UnknownAlpha,
            Algorithm::Rand,
            Algorithm::General,
        ] {
            let algo = AlgorithmSpec {
                name,
                eps: Some(args.eps.clone()),
                t: Some(1),
                k: Some(2),
            };
            let start = Instant::now();
            let r = run_algorithm(&g, &algo, &mut RunOptions::seeded(args.seed))?;
            writeln!(
                out,
                "{name},{},{},{},{},{}",
                g.n(),
                g.m(),
                r.rounds,
                r.total_weight,
                start.elapsed().as_millis()
            )?;
        }
    }
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Run(a) => cmd_run(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::LbConstruct(a) => cmd_lb(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
