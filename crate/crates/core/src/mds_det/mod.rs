//! Deterministic primal-dual dominating-set algorithms, each run as a node
//! program on the simulator: the partial dominating set with its packing
//! certificate, the weighted and unweighted compositions, the variants for
//! unknown maximum degree and unknown arboricity, and the forest
//! 3-approximation.

mod adaptive;
mod primal_dual;
mod tree;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{NodeId, WeightedGraph};
use crate::oracle::is_dominating;
use crate::rational::{int, serde_rational, serde_rational_opt};
use crate::simulator::{run_observed, Knowns, NodeProgram, SimConfig, SimError, SimulationResult};

pub use crate::packing::{PackingAssignment, PackingEntry};
pub use adaptive::{AdaptiveMode, AdaptiveMsg, AdaptiveOutput, AdaptiveProgram, AdaptiveState};
pub use primal_dual::{Finish, PdMsg, PdOutput, PdState, PrimalDualProgram, TauProgram};
pub use tree::{TreeMsg, TreeProgram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MdsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph must be unit-weighted")]
    NonUnitWeights,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("invalid input packing: {0}")]
    InvalidPacking(String),
    #[error("node {0} is not dominated by the output")]
    NotDominating(NodeId),
    #[error(transparent)]
    Simulation(#[from] SimError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Det,
    Unweighted,
    UnknownDelta,
    UnknownAlpha,
    Tree,
    Rand,
    General,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Det,
        Algorithm::Unweighted,
        Algorithm::UnknownDelta,
        Algorithm::UnknownAlpha,
        Algorithm::Tree,
        Algorithm::Rand,
        Algorithm::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Det => "det",
            Algorithm::Unweighted => "unweighted",
            Algorithm::UnknownDelta => "unknown-delta",
            Algorithm::UnknownAlpha => "unknown-alpha",
            Algorithm::Tree => "tree",
            Algorithm::Rand => "rand",
            Algorithm::General => "general",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::Rand | Algorithm::General)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// What `claimed_factor` is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantee {
    /// `total_weight <= claimed_factor * Σ x_v` for the attached packing.
    Packing,
    /// `total_weight <= claimed_factor * OPT`.
    Opt,
    /// `E[total_weight] <= claimed_factor * OPT`.
    ExpectedOpt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSetResult {
    pub algo: Algorithm,
    pub members: Vec<NodeId>,
    pub total_weight: u64,
    pub dominating: bool,
    pub certificate: Option<PackingAssignment>,
    /// The partial dominating set built by the primal-dual stage.
    pub partial: Vec<NodeId>,
    /// Primal-dual iterations executed.
    pub iterations: u32,
    pub rounds: u32,
    #[serde(with = "serde_rational")]
    pub claimed_factor: BigRational,
    pub guarantee: Guarantee,
    #[serde(with = "serde_rational_opt", default)]
    pub eps: Option<BigRational>,
    #[serde(with = "serde_rational_opt", default)]
    pub lambda: Option<BigRational>,
    #[serde(with = "serde_rational_opt", default)]
    pub gamma: Option<BigRational>,
    /// Sampling phases and iterations per phase of a randomized extension.
    pub phases: Option<u32>,
    pub phase_iterations: Option<u32>,
    pub max_message_bits: u32,
    pub total_messages: u64,
    pub orientation_out_degree: Option<u32>,
    pub local_alpha: Option<Vec<u32>>,
    pub cover_counts: Option<Vec<u32>>,
}

impl DominatingSetResult {
    pub fn certificate_total(&self) -> Option<BigRational> {
        self.certificate.as_ref().map(PackingAssignment::total)
    }
}

/// Callback invoked with the packing after every simulated round.
pub type PackingHook<'a> = &'a mut dyn FnMut(u32, &PackingAssignment);

#[derive(Default)]
pub struct RunOptions<'a> {
    pub seed: u64,
    pub packing_hook: Option<PackingHook<'a>>,
}

impl<'a> RunOptions<'a> {
    pub fn seeded(seed: u64) -> Self {
        RunOptions {
            seed,
            packing_hook: None,
        }
    }

    pub fn with_hook(hook: PackingHook<'a>) -> Self {
        RunOptions {
            seed: 0,
            packing_hook: Some(hook),
        }
    }
}

/// Node states that carry a packing value.
pub trait HasPacking {
    fn packing_entry(&self) -> PackingEntry;
}

/// Runs `program`, feeding the packing to the hook after every round.
pub(crate) fn simulate<P>(
    g: &WeightedGraph,
    program: &P,
    knowns: &Knowns,
    round_cap: u32,
    opts: &mut RunOptions,
    eps: &BigRational,
    gamma: &BigRational,
) -> Result<SimulationResult<P::Output>, SimError>
where
    P: NodeProgram,
    P::State: HasPacking,
{
    let config = SimConfig::new(opts.seed, round_cap.max(1));
    match opts.packing_hook.as_mut() {
        None => run_observed(g, program, knowns, &config, |_, _| {}),
        Some(hook) => run_observed(g, program, knowns, &config, |round, states| {
            let packing = PackingAssignment {
                eps: eps.clone(),
                gamma: gamma.clone(),
                entries: states.iter().map(HasPacking::packing_entry).collect(),
            };
            hook(round, &packing);
        }),
    }
}

pub(crate) fn cap_for(closed_form_rounds: u64) -> u32 {
    (64 * closed_form_rounds.max(1)).min(u64::from(u32::MAX)) as u32
}

/// Checks `0 < eps < 1`.
pub fn validate_eps(eps: &BigRational) -> Result<(), MdsError> {
    if eps <= &BigRational::zero() || eps >= &BigRational::one() {
        return Err(MdsError::InvalidParams(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    Ok(())
}

pub(crate) fn alpha_of(g: &WeightedGraph) -> Result<u32, MdsError> {
    match g.declared_alpha() {
        Some(a) if a >= 1 => Ok(a),
        Some(_) => Err(MdsError::InvalidParams(
            "arboricity bound must be >= 1".into(),
        )),
        None => Err(MdsError::InvalidParams(
            "graph has no declared arboricity bound".into(),
        )),
    }
}

/// `(ε, λ, r)` for the partial dominating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgoParams {
    pub eps: BigRational,
    pub lambda: BigRational,
    /// Number of iterations: 0 when `λ < 1/(Δ+1)`, otherwise the `r >= 1`
    /// with `(1+ε)^(r-1)/(Δ+1) <= λ < (1+ε)^r/(Δ+1)`.
    pub r: u32,
}

impl AlgoParams {
    pub fn new(
        eps: &BigRational,
        lambda: &BigRational,
        alpha: u32,
        max_degree: usize,
    ) -> Result<Self, MdsError> {
        validate_eps(eps)?;
        let one = BigRational::one();
        let upper = &one / (int(u64::from(alpha) + 1) * (&one + eps));
        if lambda <= &BigRational::zero() || lambda >= &upper {
            return Err(MdsError::InvalidParams(format!(
                "lambda must lie in (0, {upper}), got {lambda}"
            )));
        }
        Ok(AlgoParams {
            eps: eps.clone(),
            lambda: lambda.clone(),
            r: partial_iterations(eps, lambda, max_degree),
        })
    }
}

/// Iteration count `r` of the partial dominating set (0 if `λ(Δ+1) < 1`).
pub fn partial_iterations(eps: &BigRational, lambda: &BigRational, max_degree: usize) -> u32 {
    let target = lambda * int(max_degree as u64 + 1);
    if target < BigRational::one() {
        return 0;
    }
    let growth = BigRational::one() + eps;
    let mut acc = BigRational::one();
    let mut r = 0;
    while acc <= target {
        acc *= &growth;
        r += 1;
    }
    r
}

/// Iteration count of the unweighted procedure: `r + 1` where
/// `(1+ε)^r/(Δ+1) <= 1/((2α+1)(1+ε)) < (1+ε)^(r+1)/(Δ+1)`, or 0 when no
/// such `r >= 0` exists.
pub fn unweighted_iterations(eps: &BigRational, alpha: u32, max_degree: usize) -> u32 {
    let target = deterministic_lambda(alpha, eps) * int(max_degree as u64 + 1);
    let growth = BigRational::one() + eps;
    let mut pow = BigRational::one();
    if pow > target {
        return 0;
    }
    let mut r = 0;
    while &pow * &growth <= target {
        pow *= &growth;
        r += 1;
    }
    r + 1
}

/// `1/((2α+1)(1+ε))`.
pub fn deterministic_lambda(alpha: u32, eps: &BigRational) -> BigRational {
    BigRational::one() / (int(2 * u64::from(alpha) + 1) * (BigRational::one() + eps))
}

/// `(2α+1)(1+ε)`.
pub fn deterministic_factor(alpha: u32, eps: &BigRational) -> BigRational {
    int(2 * u64::from(alpha) + 1) * (BigRational::one() + eps)
}

/// `α (1/(1+ε) - λ(α+1))^{-1}`, the weight bound on the partial set per
/// unit of packing mass in its closed neighbourhood.
pub fn partial_weight_factor(alpha: u32, eps: &BigRational, lambda: &BigRational) -> BigRational {
    let a = int(u64::from(alpha));
    let slack =
        BigRational::one() / (BigRational::one() + eps) - lambda * (&a + BigRational::one());
    a / slack
}

/// Closed neighbourhood `N^+_S` as a membership vector.
pub fn closed_cover(g: &WeightedGraph, set: &[NodeId]) -> Vec<bool> {
    let mut covered = vec![false; g.n()];
    for &u in set {
        for v in g.closed_neighborhood(u) {
            covered[v] = true;
        }
    }
    covered
}

pub fn compute_tau(g: &WeightedGraph) -> Result<Vec<u64>, MdsError> {
    let result = crate::simulator::run_synchronous(
        g,
        &TauProgram,
        &Knowns::default(),
        &SimConfig::new(0, cap_for(2)),
    )?;
    Ok(result.outputs)
}

/// Output of the partial dominating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialResult {
    pub set: Vec<NodeId>,
    pub packing: PackingAssignment,
    /// `v ∈ N^+_S`, as known locally by each node at the end.
    pub dominated: Vec<bool>,
    pub params: AlgoParams,
    pub rounds: u32,
    pub max_message_bits: u32,
    pub total_messages: u64,
}

pub fn partial_dominating_set(
    g: &WeightedGraph,
    eps: &BigRational,
    lambda: &BigRational,
) -> Result<PartialResult, MdsError> {
    partial_dominating_set_with(g, eps, lambda, &mut RunOptions::default())
}

pub fn partial_dominating_set_with(
    g: &WeightedGraph,
    eps: &BigRational,
    lambda: &BigRational,
    opts: &mut RunOptions,
) -> Result<PartialResult, MdsError> {
    let alpha = alpha_of(g)?;
    let params = AlgoParams::new(eps, lambda, alpha, g.max_degree())?;
    let (sim, _) = run_primal_dual(g, eps, params.r, Finish::Partial, opts)?;
    let set = sim
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, o)| o.in_s)
        .map(|(v, _)| v)
        .collect();
    Ok(PartialResult {
        set,
        packing: PackingAssignment {
            eps: eps.clone(),
            gamma: BigRational::one(),
            entries: sim.outputs.iter().map(|o| o.entry).collect(),
        },
        dominated: sim.outputs.iter().map(|o| o.dominated).collect(),
        params,
        rounds: sim.rounds_executed,
        max_message_bits: sim.max_message_bits,
        total_messages: sim.total_messages,
    })
}

fn run_primal_dual(
    g: &WeightedGraph,
    eps: &BigRational,
    iterations: u32,
    finish: Finish,
    opts: &mut RunOptions,
) -> Result<(SimulationResult<PdOutput>, Knowns), MdsError> {
    let knowns = Knowns {
        n: Some(g.n()),
        max_degree: Some(g.max_degree()),
        alpha: g.declared_alpha(),
    };
    let program = PrimalDualProgram::new(eps.clone(), iterations, finish, &knowns)
        .map_err(|f| MdsError::InvalidParams(f.0))?;
    let cap = cap_for(2 * u64::from(iterations) + 3);
    let sim = simulate(g, &program, &knowns, cap, opts, eps, &BigRational::one())?;
    Ok((sim, knowns))
}

fn members_of(flags: impl Iterator<Item = bool>) -> Vec<NodeId> {
    flags
        .enumerate()
        .filter(|(_, f)| *f)
        .map(|(v, _)| v)
        .collect()
}

fn check_dominating(g: &WeightedGraph, members: &[NodeId]) -> Result<(), MdsError> {
    let covered = closed_cover(g, members);
    match covered.iter().position(|c| !c) {
        Some(v) => Err(MdsError::NotDominating(v)),
        None => Ok(()),
    }
}

fn assemble_pd(
    g: &WeightedGraph,
    algo: Algorithm,
    sim: SimulationResult<PdOutput>,
    eps: &BigRational,
    lambda: Option<BigRational>,
    iterations: u32,
    claimed_factor: BigRational,
) -> Result<DominatingSetResult, MdsError> {
    let members = members_of(sim.outputs.iter().map(|o| o.in_s || o.extension));
    check_dominating(g, &members)?;
    Ok(DominatingSetResult {
        algo,
        total_weight: g.set_weight(&members),
        dominating: is_dominating(g, &members),
        partial: members_of(sim.outputs.iter().map(|o| o.in_s)),
        members,
        certificate: Some(PackingAssignment {
            eps: eps.clone(),
            gamma: BigRational::one(),
            entries: sim.outputs.iter().map(|o| o.entry).collect(),
        }),
        iterations,
        rounds: sim.rounds_executed,
        claimed_factor,
        guarantee: Guarantee::Packing,
        eps: Some(eps.clone()),
        lambda,
        gamma: None,
        phases: None,
        phase_iterations: None,
        max_message_bits: sim.max_message_bits,
        total_messages: sim.total_messages,
        orientation_out_degree: None,
        local_alpha: None,
        cover_counts: None,
    })
}

pub fn mds_deterministic(
    g: &WeightedGraph,
    eps: &BigRational,
) -> Result<DominatingSetResult, MdsError> {
    mds_deterministic_with(g, eps, &mut RunOptions::default())
}

/// Partial dominating set with `λ = 1/((2α+1)(1+ε))`, then every node still
/// undominated adds the lowest-id node of weight `τ_v` in `N^+_v`.
pub fn mds_deterministic_with(
    g: &WeightedGraph,
    eps: &BigRational,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    let alpha = alpha_of(g)?;
    let lambda = deterministic_lambda(alpha, eps);
    let params = AlgoParams::new(eps, &lambda, alpha, g.max_degree())?;
    let (sim, _) = run_primal_dual(g, eps, params.r, Finish::CheapestNeighbor, opts)?;
    assemble_pd(
        g,
        Algorithm::Det,
        sim,
        eps,
        Some(lambda),
        params.r,
        deterministic_factor(alpha, eps),
    )
}

pub fn mds_unweighted(
    g: &WeightedGraph,
    eps: &BigRational,
) -> Result<DominatingSetResult, MdsError> {
    mds_unweighted_with(g, eps, &mut RunOptions::default())
}

/// Unit-weight procedure: the same iterations with the unweighted count,
/// then all undominated nodes join.
pub fn mds_unweighted_with(
    g: &WeightedGraph,
    eps: &BigRational,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    if !g.is_unit_weighted() {
        return Err(MdsError::NonUnitWeights);
    }
    validate_eps(eps)?;
    let alpha = alpha_of(g)?;
    let iterations = unweighted_iterations(eps, alpha, g.max_degree());
    let (sim, _) = run_primal_dual(g, eps, iterations, Finish::Undominated, opts)?;
    assemble_pd(
        g,
        Algorithm::Unweighted,
        sim,
        eps,
        Some(deterministic_lambda(alpha, eps)),
        iterations,
        deterministic_factor(alpha, eps),
    )
}

fn assemble_adaptive(
    g: &WeightedGraph,
    algo: Algorithm,
    sim: SimulationResult<AdaptiveOutput>,
    eps: &BigRational,
    lambda: Option<BigRational>,
    claimed_factor: BigRational,
    guarantee: Guarantee,
) -> Result<DominatingSetResult, MdsError> {
    let members = members_of(sim.outputs.iter().map(|o| o.in_s || o.extension));
    check_dominating(g, &members)?;
    let local_alpha: Option<Vec<u32>> = sim.outputs.iter().map(|o| o.local_alpha).collect();
    let out_degree = local_alpha.as_ref().map(|_| {
        sim.outputs
            .iter()
            .map(|o| o.out_neighbors.len() as u32)
            .max()
            .unwrap_or(0)
    });
    Ok(DominatingSetResult {
        algo,
        total_weight: g.set_weight(&members),
        dominating: is_dominating(g, &members),
        partial: members_of(sim.outputs.iter().map(|o| o.in_s)),
        members,
        certificate: Some(PackingAssignment {
            eps: eps.clone(),
            gamma: BigRational::one(),
            entries: sim.outputs.iter().map(|o| o.entry).collect(),
        }),
        iterations: sim.outputs.iter().map(|o| o.iterations).max().unwrap_or(0),
        rounds: sim.rounds_executed,
        claimed_factor,
        guarantee,
        eps: Some(eps.clone()),
        lambda,
        gamma: None,
        phases: None,
        phase_iterations: None,
        max_message_bits: sim.max_message_bits,
        total_messages: sim.total_messages,
        orientation_out_degree: out_degree,
        local_alpha,
        cover_counts: None,
    })
}

pub fn mds_unknown_delta(
    g: &WeightedGraph,
    eps: &BigRational,
) -> Result<DominatingSetResult, MdsError> {
    mds_unknown_delta_with(g, eps, &mut RunOptions::default())
}

/// Nodes are not told `Δ`: each starts from `τ_v / max_{u ∈ N^+_v} |N^+_u|`
/// and, at the start of every iteration, an undominated node whose value
/// exceeds `λτ_v` picks its cheapest dominator and stops growing.
pub fn mds_unknown_delta_with(
    g: &WeightedGraph,
    eps: &BigRational,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    let alpha = alpha_of(g)?;
    let lambda = deterministic_lambda(alpha, eps);
    AlgoParams::new(eps, &lambda, alpha, g.max_degree())?;
    let knowns = Knowns {
        n: None,
        max_degree: None,
        alpha: Some(alpha),
    };
    let program = AdaptiveProgram::unknown_delta(eps.clone(), alpha);
    let r = partial_iterations(eps, &lambda, g.max_degree());
    let cap = cap_for(2 * u64::from(r) + 8);
    let sim = simulate(g, &program, &knowns, cap, opts, eps, &BigRational::one())?;
    assemble_adaptive(
        g,
        Algorithm::UnknownDelta,
        sim,
        eps,
        Some(lambda),
        deterministic_factor(alpha, eps),
        Guarantee::Packing,
    )
}

pub fn mds_unknown_alpha(
    g: &WeightedGraph,
    eps: &BigRational,
) -> Result<DominatingSetResult, MdsError> {
    mds_unknown_alpha_with(g, eps, &mut RunOptions::default())
}

/// Nodes know only `n`. A peeling schedule over doubling guesses orients
/// the edges; each node then uses the largest out-degree in its closed
/// neighbourhood as its arboricity estimate, starts from `1/(n+1)` and runs
/// the same self-terminating iterations as the unknown-`Δ` variant.
///
/// The claimed factor is `(2α'+1)(2+ε)` with `α'` the out-degree the
/// orientation actually achieved.
pub fn mds_unknown_alpha_with(
    g: &WeightedGraph,
    eps: &BigRational,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    if !g.is_unit_weighted() {
        return Err(MdsError::NonUnitWeights);
    }
    validate_eps(eps)?;
    let knowns = Knowns {
        n: Some(g.n()),
        max_degree: None,
        alpha: None,
    };
    let program = AdaptiveProgram::unknown_alpha(eps.clone(), g.n());
    let growth_rounds = partial_iterations(eps, &BigRational::one(), g.n());
    let cap = cap_for(u64::from(program.orientation_rounds()) + 2 * u64::from(growth_rounds) + 8);
    let sim = simulate(g, &program, &knowns, cap, opts, eps, &BigRational::one())?;
    let orientation = adaptive::orientation_of(g, &sim.outputs)
        .ok_or_else(|| MdsError::InvalidParams("distributed orientation is inconsistent".into()))?;
    let achieved = orientation.max_out_degree();
    let factor = int(2 * u64::from(achieved) + 1) * (int(2) + eps);
    assemble_adaptive(
        g,
        Algorithm::UnknownAlpha,
        sim,
        eps,
        None,
        factor,
        Guarantee::Opt,
    )
}

/// All non-leaf nodes, plus isolated nodes and the lower-id endpoint of
/// every single-edge component.
pub fn tree_mds(g: &WeightedGraph) -> Result<DominatingSetResult, MdsError> {
    if !g.is_forest() {
        return Err(MdsError::NotAForest);
    }
    if !g.is_unit_weighted() {
        return Err(MdsError::NonUnitWeights);
    }
    let sim = crate::simulator::run_synchronous(
        g,
        &TreeProgram,
        &Knowns::default(),
        &SimConfig::new(0, cap_for(2)),
    )?;
    let members = members_of(sim.outputs.iter().copied());
    check_dominating(g, &members)?;
    Ok(DominatingSetResult {
        algo: Algorithm::Tree,
        total_weight: g.set_weight(&members),
        dominating: is_dominating(g, &members),
        partial: Vec::new(),
        members,
        certificate: None,
        iterations: 0,
        rounds: sim.rounds_executed,
        claimed_factor: int(3),
        guarantee: Guarantee::Opt,
        eps: None,
        lambda: None,
        gamma: None,
        phases: None,
        phase_iterations: None,
        max_message_bits: sim.max_message_bits,
        total_messages: sim.total_messages,
        orientation_out_degree: None,
        local_alpha: None,
        cover_counts: None,
    })
}
