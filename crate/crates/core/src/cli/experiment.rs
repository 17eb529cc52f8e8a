use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::graph::{
    build_lower_bound_graph, complete, cycle, generate_bounded_arboricity, generate_star, gnp,
    parse_graph, path, petersen, random_tree, LowerBoundGraph, WeightedGraph,
};
use crate::mds_det::{
    mds_deterministic_with, mds_unknown_alpha_with, mds_unknown_delta_with, mds_unweighted_with,
    tree_mds, Algorithm, DominatingSetResult, Guarantee, MdsError, RunOptions,
};
use crate::mds_rand::{mds_general_with, mds_randomized_with};
use crate::oracle::{exact_mds, EXACT_LIMIT};
use crate::rational::{int, parse_rational, to_decimal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Star,
    Path,
    Cycle,
    Complete,
    Tree,
    Petersen,
    Gnp,
    Arboricity,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default = "one_usize")]
    pub n: usize,
    #[serde(default = "one_u32")]
    pub alpha: u32,
    #[serde(default = "one_u64")]
    pub weight_max: u64,
    /// Leaves of a star.
    #[serde(default)]
    pub delta: usize,
    /// Edge probability of `gnp` as `p/q`.
    #[serde(default)]
    pub p: Option<String>,
    /// Base graph of the lower-bound construction: `K<n>`, `C<n>`, `P<n>`,
    /// `S<d>`, `petersen`, or a graph file.
    #[serde(default)]
    pub base: Option<String>,
}

fn one_usize() -> usize {
    1
}
fn one_u32() -> u32 {
    1
}
fn one_u64() -> u64 {
    1
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidConfig(msg.into())
}

/// Named small graphs, else a path to a graph file.
pub fn named_graph(name: &str) -> Result<WeightedGraph, CliError> {
    let size = |s: &str| s.parse::<usize>().ok();
    let lower = name.to_ascii_lowercase();
    if lower == "petersen" {
        return Ok(petersen());
    }
    if let Some(k) = lower.strip_prefix('k').and_then(size) {
        return Ok(complete(k));
    }
    if let Some(k) = lower.strip_prefix('c').and_then(size) {
        if k < 3 {
            return Err(invalid("a cycle needs at least 3 nodes"));
        }
        return Ok(cycle(k));
    }
    if let Some(k) = lower.strip_prefix('p').and_then(size) {
        return Ok(path(k));
    }
    if let Some(k) = lower.strip_prefix('s').and_then(size) {
        return Ok(generate_star(k));
    }
    let text = std::fs::read_to_string(name).map_err(|e| CliError::Io(format!("{name}: {e}")))?;
    Ok(parse_graph(&text)?)
}

/// Builds the instance for `seed`; the lower-bound family also returns the
/// construction with its node roles.
pub fn generate(
    spec: &GeneratorSpec,
    seed: u64,
) -> Result<(WeightedGraph, Option<LowerBoundGraph>), CliError> {
    let g = match spec.family {
        Family::Star => generate_star(spec.delta),
        Family::Path => path(spec.n),
        Family::Cycle => {
            if spec.n < 3 {
                return Err(invalid("a cycle needs n >= 3"));
            }
            cycle(spec.n)
        }
        Family::Complete => complete(spec.n),
        Family::Tree => random_tree(spec.n, seed),
        Family::Petersen => petersen(),
        Family::Gnp => {
            let p = parse_rational(spec.p.as_deref().unwrap_or("1/2"))?;
            let num = u32::try_from(p.numer()).map_err(|_| invalid("gnp probability"))?;
            let den = u32::try_from(p.denom()).map_err(|_| invalid("gnp probability"))?;
            if num > den {
                return Err(invalid("gnp probability exceeds 1"));
            }
            gnp(spec.n, num, den, seed)
        }
        Family::Arboricity => {
            generate_bounded_arboricity(spec.n, spec.alpha, spec.weight_max, seed)?
        }
        Family::LowerBound => {
            let base = named_graph(
                spec.base
                    .as_deref()
                    .ok_or_else(|| invalid("lower-bound needs `base`"))?,
            )?;
            let h = build_lower_bound_graph(&base)?;
            return Ok((h.graph.clone(), Some(h)));
        }
    };
    Ok((g, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub name: Algorithm,
    /// `p/q`.
    #[serde(default)]
    pub eps: Option<String>,
    #[serde(default)]
    pub t: Option<u32>,
    #[serde(default)]
    pub k: Option<u32>,
}

impl AlgorithmSpec {
    fn eps(&self) -> Result<BigRational, CliError> {
        let text = self
            .eps
            .as_deref()
            .ok_or_else(|| invalid(format!("`{}` needs eps", self.name)))?;
        Ok(parse_rational(text)?)
    }

    /// Checks that the parameters the algorithm needs are present.
    pub fn validate(&self) -> Result<(), CliError> {
        match self.name {
            Algorithm::Det
            | Algorithm::Unweighted
            | Algorithm::UnknownDelta
            | Algorithm::UnknownAlpha => self.eps().map(|_| ()),
            Algorithm::Rand => self.t.map(|_| ()).ok_or_else(|| invalid("`rand` needs t")),
            Algorithm::General => self
                .k
                .map(|_| ())
                .ok_or_else(|| invalid("`general` needs k")),
            Algorithm::Tree => Ok(()),
        }
    }
}

pub fn run_algorithm(
    g: &WeightedGraph,
    spec: &AlgorithmSpec,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, CliError> {
    let result = match spec.name {
        Algorithm::Det => mds_deterministic_with(g, &spec.eps()?, opts),
        Algorithm::Unweighted => mds_unweighted_with(g, &spec.eps()?, opts),
        Algorithm::UnknownDelta => mds_unknown_delta_with(g, &spec.eps()?, opts),
        Algorithm::UnknownAlpha => mds_unknown_alpha_with(g, &spec.eps()?, opts),
        Algorithm::Tree => tree_mds(g),
        Algorithm::Rand => mds_randomized_with(g, spec.t.unwrap_or(1), opts),
        Algorithm::General => mds_general_with(g, spec.k.unwrap_or(1), opts),
    };
    Ok(result?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedRange {
    pub start: u64,
    /// Exclusive.
    pub end: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
    /// Used when no generator is given.
    #[serde(default)]
    pub graph: Option<PathBuf>,
    pub algorithm: AlgorithmSpec,
    pub seeds: SeedRange,
    #[serde(default = "one_u32")]
    pub trials: u32,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "yes")]
    pub verify: bool,
}

fn yes() -> bool {
    true
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.generator.is_none() && self.graph.is_none() {
            return Err(invalid("config needs a generator or a graph"));
        }
        if self.seeds.end < self.seeds.start {
            return Err(invalid("seed range end precedes start"));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        self.algorithm.validate()
    }
}

/// One CSV row per (instance seed, trial).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub seed: u64,
    pub trial: u32,
    pub algo: Algorithm,
    pub n: usize,
    pub m: usize,
    pub alpha: Option<u32>,
    pub delta: usize,
    pub ds_weight: Option<u64>,
    pub opt_weight: Option<u64>,
    /// `ds_weight / opt_weight`, 20 decimals.
    pub ratio: String,
    pub bound: String,
    pub rounds: Option<u32>,
    pub max_message_bits: Option<u32>,
    pub max_cover: Option<u32>,
    /// `ds_weight <= bound * OPT`, or against the certificate when no
    /// optimum is available and the bound is certificate-relative.
    pub within_bound: Option<bool>,
    pub error: String,
}

/// Algorithm seed for a trial; distinct for distinct `(seed, trial)`.
pub fn trial_seed(seed: u64, trial: u32) -> u64 {
    (seed << 20) ^ u64::from(trial)
}

fn evaluate(result: &DominatingSetResult, opt: Option<u64>) -> (String, Option<bool>) {
    let weight = int(result.total_weight);
    match opt {
        Some(opt) => {
            let ratio = if opt == 0 {
                String::new()
            } else {
                to_decimal(&(&weight / int(opt)), 20)
            };
            (ratio, Some(weight <= &result.claimed_factor * int(opt)))
        }
        None => {
            let within = match (&result.certificate, result.guarantee) {
                (Some(c), Guarantee::Packing) => Some(weight <= &result.claimed_factor * c.total()),
                _ => None,
            };
            (String::new(), within)
        }
    }
}

fn instance(config: &ExperimentConfig, seed: u64) -> Result<WeightedGraph, CliError> {
    match &config.generator {
        Some(spec) => Ok(generate(spec, seed)?.0),
        None => named_graph(&config.graph.as_ref().unwrap().to_string_lossy()),
    }
}

fn rows_for_seed(config: &ExperimentConfig, seed: u64) -> Vec<Row> {
    let algo = config.algorithm.name;
    let failed = |trial, e: &dyn std::fmt::Display, g: Option<&WeightedGraph>| Row {
        seed,
        trial,
        algo,
        n: g.map_or(0, |g| g.n()),
        m: g.map_or(0, |g| g.m()),
        alpha: g.and_then(|g| g.declared_alpha()),
        delta: g.map_or(0, |g| g.max_degree()),
        ds_weight: None,
        opt_weight: None,
        ratio: String::new(),
        bound: String::new(),
        rounds: None,
        max_message_bits: None,
        max_cover: None,
        within_bound: None,
        error: e.to_string(),
    };
    let g = match instance(config, seed) {
        Ok(g) => g,
        Err(e) => return (0..config.trials).map(|t| failed(t, &e, None)).collect(),
    };
    let opt = (config.verify && g.n() <= EXACT_LIMIT)
        .then(|| exact_mds(&g).ok().map(|r| r.opt_weight))
        .flatten();
    (0..config.trials)
        .map(|trial| {
            let mut opts = RunOptions::seeded(trial_seed(seed, trial));
            match run_algorithm(&g, &config.algorithm, &mut opts) {
                Ok(r) => {
                    let (ratio, within_bound) = evaluate(&r, opt);
                    Row {
                        seed,
                        trial,
                        algo,
                        n: g.n(),
                        m: g.m(),
                        alpha: g.declared_alpha(),
                        delta: g.max_degree(),
                        ds_weight: Some(r.total_weight),
                        opt_weight: opt,
                        ratio,
                        bound: to_decimal(&r.claimed_factor, 20),
                        rounds: Some(r.rounds),
                        max_message_bits: Some(r.max_message_bits),
                        max_cover: r
                            .cover_counts
                            .as_ref()
                            .and_then(|c| c.iter().copied().max()),
                        within_bound,
                        error: String::new(),
                    }
                }
                Err(e) => failed(trial, &e, Some(&g)),
            }
        })
        .collect()
}

/// Thread count from `ARBODOM_THREADS`, if set.
pub fn thread_cap() -> Option<usize> {
    std::env::var("ARBODOM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
}

/// Runs every seed of the range, possibly in parallel; rows come back in
/// seed order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<Row>, CliError> {
    config.validate()?;
    let seeds: Vec<u64> = (config.seeds.start..config.seeds.end).collect();
    let work = || -> Vec<Row> {
        seeds
            .par_iter()
            .map(|&s| rows_for_seed(config, s))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(pool.install(work))
}

pub fn rows_to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record([
        "seed",
        "trial",
        "algo",
        "n",
        "m",
        "alpha",
        "delta",
        "ds_weight",
        "opt_weight",
        "ratio",
        "bound",
        "rounds",
        "max_message_bits",
        "max_cover",
        "within_bound",
        "error",
    ])
    .map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Mean of `ds_weight` over successful rows, exact.
pub fn mean_weight(rows: &[Row]) -> Option<BigRational> {
    let weights: Vec<u64> = rows.iter().filter_map(|r| r.ds_weight).collect();
    if weights.is_empty() {
        return None;
    }
    let total = weights
        .iter()
        .fold(BigRational::zero(), |acc, &w| acc + int(w));
    Some(total / int(weights.len() as u64))
}

impl From<MdsError> for CliError {
    fn from(e: MdsError) -> Self {
        CliError::Algorithm(e.to_string())
    }
}
