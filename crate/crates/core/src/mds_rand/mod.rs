//! Randomized extension of a partial dominating set by sampling, and the two
//! algorithms built on it: the `α(1 + O(1/t))` composition for bounded
//! arboricity and the `O(kΔ^{2/k})` algorithm for general graphs.

mod extension;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{NodeId, WeightedGraph};
use crate::mds_det::{
    alpha_of, cap_for, closed_cover, partial_dominating_set_with, partial_weight_factor, simulate,
    Algorithm, DominatingSetResult, Guarantee, MdsError, RunOptions,
};
use crate::oracle::{first_undominated, load_violation};
use crate::packing::{PackingAssignment, PackingEntry};
use crate::rational::{ceil_log, int, root_upper};
use crate::simulator::{Knowns, SimulationResult};

pub use extension::{bernoulli, ExtInput, ExtMsg, ExtOutput, ExtState, ExtensionProgram};

/// Binary digits kept when rounding an irrational `γ` up.
pub const GAMMA_BITS: u32 = 20;

/// Per-node covering numbers of an extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverTally {
    /// Zero for nodes dominated before the extension.
    pub counts: Vec<u32>,
    /// `(phase, iteration)` in which a sampler first dominated the node.
    pub first_domination: Vec<Option<(u32, u32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub added: Vec<NodeId>,
    pub tally: CoverTally,
    pub phases: u32,
    pub iterations: u32,
    /// Weight of the nodes added in each phase.
    pub phase_weights: Vec<u64>,
    /// Values after the last rescale; dominated entries are frozen.
    pub packing: PackingAssignment,
    pub rounds: u32,
    pub max_message_bits: u32,
    pub total_messages: u64,
}

/// Phases `max(1, ⌈log_γ λ^{-1}⌉)` and iterations per phase
/// `⌈log_γ(Δ+1)⌉ + 1`.
pub fn extension_schedule(
    lambda: &BigRational,
    gamma: &BigRational,
    max_degree: usize,
) -> (u32, u32) {
    let phases = ceil_log(gamma, &lambda.recip()).max(1);
    let iterations = ceil_log(gamma, &int(max_degree as u64 + 1)) + 1;
    (phases, iterations)
}

fn check_gamma(gamma: &BigRational) -> Result<(), MdsError> {
    if gamma <= &BigRational::one() {
        return Err(MdsError::InvalidParams(format!(
            "gamma must exceed 1, got {gamma}"
        )));
    }
    Ok(())
}

pub fn extend_randomized(
    g: &WeightedGraph,
    set: &[NodeId],
    packing: &PackingAssignment,
    lambda: &BigRational,
    gamma: &BigRational,
    seed: u64,
) -> Result<Extension, MdsError> {
    extend_randomized_with(
        g,
        set,
        packing,
        lambda,
        gamma,
        &mut RunOptions::seeded(seed),
    )
}

/// Requires a feasible packing with `x_v >= λτ_v` for every node outside
/// `N^+_S`.
pub fn extend_randomized_with(
    g: &WeightedGraph,
    set: &[NodeId],
    packing: &PackingAssignment,
    lambda: &BigRational,
    gamma: &BigRational,
    opts: &mut RunOptions,
) -> Result<Extension, MdsError> {
    check_gamma(gamma)?;
    if lambda <= &BigRational::zero() || lambda > &BigRational::one() {
        return Err(MdsError::InvalidParams(format!(
            "lambda must lie in (0, 1], got {lambda}"
        )));
    }
    let n = g.n();
    if packing.entries.len() != n {
        return Err(MdsError::InvalidPacking(format!(
            "{} entries for {n} nodes",
            packing.entries.len()
        )));
    }
    if set.iter().any(|&v| v >= n) {
        return Err(MdsError::InvalidParams(
            "set names a node outside the graph".into(),
        ));
    }
    if let Some(v) = packing.entries.iter().position(|e| e.j != 0) {
        return Err(MdsError::InvalidPacking(format!(
            "entry of node {v} is already rescaled"
        )));
    }
    let values = packing.values();
    if let Some(u) = load_violation(g, &values) {
        return Err(MdsError::InvalidPacking(format!(
            "constraint of node {u} is violated"
        )));
    }
    let dominated = closed_cover(g, set);
    for v in 0..n {
        let tau = g.closed_neighborhood(v).map(|u| g.weight(u)).min().unwrap();
        if !dominated[v] && values[v] < lambda * int(tau) {
            return Err(MdsError::InvalidPacking(format!(
                "undominated node {v} has value below lambda * tau"
            )));
        }
    }
    let mut in_s = vec![false; n];
    for &v in set {
        in_s[v] = true;
    }
    let inputs = (0..n)
        .map(|v| ExtInput {
            in_s: in_s[v],
            dominated: dominated[v],
            entry: packing.entries[v],
        })
        .collect();
    let (phases, iterations) = extension_schedule(lambda, gamma, g.max_degree());
    let program = ExtensionProgram::new(
        Some(inputs),
        &packing.eps,
        gamma.clone(),
        g.max_degree(),
        phases,
        iterations,
    );
    let sim = run_extension(g, &program, opts, &packing.eps)?;
    let mut members: Vec<NodeId> = set.to_vec();
    let ext = collect(g, &program, sim, &packing.eps);
    members.extend(&ext.added);
    if let Some(v) = first_undominated(g, &members) {
        return Err(MdsError::NotDominating(v));
    }
    Ok(ext)
}

fn run_extension(
    g: &WeightedGraph,
    program: &ExtensionProgram,
    opts: &mut RunOptions,
    eps: &BigRational,
) -> Result<SimulationResult<ExtOutput>, MdsError> {
    let knowns = Knowns {
        n: Some(g.n()),
        max_degree: Some(g.max_degree()),
        alpha: g.declared_alpha(),
    };
    let cap = cap_for(u64::from(program.total_rounds()));
    Ok(simulate(
        g,
        program,
        &knowns,
        cap,
        opts,
        eps,
        &program.gamma,
    )?)
}

fn collect(
    g: &WeightedGraph,
    program: &ExtensionProgram,
    sim: SimulationResult<ExtOutput>,
    eps: &BigRational,
) -> Extension {
    let added: Vec<NodeId> = (0..g.n()).filter(|&v| sim.outputs[v].in_s_prime).collect();
    let mut phase_weights = vec![0; program.phases as usize];
    for &v in &added {
        let p = sim.outputs[v]
            .joined_phase
            .expect("added nodes record their phase");
        phase_weights[(p - 1) as usize] += g.weight(v);
    }
    Extension {
        tally: CoverTally {
            counts: sim.outputs.iter().map(|o| o.cover_count).collect(),
            first_domination: sim.outputs.iter().map(|o| o.covered_at).collect(),
        },
        added,
        phases: program.phases,
        iterations: program.iterations,
        phase_weights,
        packing: PackingAssignment {
            eps: eps.clone(),
            gamma: program.gamma.clone(),
            entries: sim.outputs.iter().map(|o| o.entry).collect(),
        },
        rounds: sim.rounds_executed,
        max_message_bits: sim.max_message_bits,
        total_messages: sim.total_messages,
    }
}

/// Largest admissible `t` for arboricity `α`: `max(1, ⌊α / ln α⌋)`.
pub fn max_phases_for(alpha: u32) -> u32 {
    if alpha <= 1 {
        return 1;
    }
    let a = f64::from(alpha);
    ((a / a.ln()).floor() as u32).max(1)
}

/// `(ε, λ, γ)` for the bounded-arboricity composition: `ε = 1/(4t)`,
/// `λ = ε/(α+1)` and `γ = max(2, α^{1/(2t)})`, the root rounded up to a
/// multiple of `2^-20`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedSchedule {
    pub eps: BigRational,
    pub lambda: BigRational,
    pub gamma: BigRational,
}

pub fn randomized_schedule(alpha: u32, t: u32) -> Result<RandomizedSchedule, MdsError> {
    let limit = max_phases_for(alpha);
    if t == 0 || t > limit {
        return Err(MdsError::InvalidParams(format!(
            "t must lie in 1..={limit} for arboricity {alpha}, got {t}"
        )));
    }
    let eps = BigRational::one() / int(4 * u64::from(t));
    let lambda = &eps / int(u64::from(alpha) + 1);
    let gamma = root_upper(u64::from(alpha), 2 * t, GAMMA_BITS).max(int(2));
    Ok(RandomizedSchedule { eps, lambda, gamma })
}

/// `α(1/(1+ε) - λ(α+1))^{-1} + γ(γ+1)·phases`.
pub fn randomized_factor(alpha: u32, s: &RandomizedSchedule, phases: u32) -> BigRational {
    partial_weight_factor(alpha, &s.eps, &s.lambda)
        + &s.gamma * (&s.gamma + BigRational::one()) * int(u64::from(phases))
}

pub fn mds_randomized(
    g: &WeightedGraph,
    t: u32,
    seed: u64,
) -> Result<DominatingSetResult, MdsError> {
    mds_randomized_with(g, t, &mut RunOptions::seeded(seed))
}

pub fn mds_randomized_with(
    g: &WeightedGraph,
    t: u32,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    let alpha = alpha_of(g)?;
    let s = randomized_schedule(alpha, t)?;
    let partial = partial_dominating_set_with(g, &s.eps, &s.lambda, opts)?;
    let ext = extend_randomized_with(g, &partial.set, &partial.packing, &s.lambda, &s.gamma, opts)?;
    let mut members: Vec<NodeId> = partial.set.iter().chain(&ext.added).copied().collect();
    members.sort_unstable();
    let cover_counts = Some(ext.tally.counts.clone());
    Ok(DominatingSetResult {
        algo: Algorithm::Rand,
        total_weight: g.set_weight(&members),
        dominating: true,
        partial: partial.set,
        members,
        certificate: Some(partial.packing),
        iterations: partial.params.r,
        rounds: partial.rounds + ext.rounds,
        claimed_factor: randomized_factor(alpha, &s, ext.phases),
        guarantee: Guarantee::ExpectedOpt,
        eps: Some(s.eps),
        lambda: Some(s.lambda),
        gamma: Some(s.gamma),
        phases: Some(ext.phases),
        phase_iterations: Some(ext.iterations),
        max_message_bits: partial.max_message_bits.max(ext.max_message_bits),
        total_messages: partial.total_messages + ext.total_messages,
        orientation_out_degree: None,
        local_alpha: None,
        cover_counts,
    })
}

/// `max(2, Δ^{1/k})`, the root rounded up to a multiple of `2^-20`.
pub fn general_gamma(max_degree: usize, k: u32) -> BigRational {
    root_upper(max_degree.max(1) as u64, k, GAMMA_BITS).max(int(2))
}

/// `γ(γ+1)(k+1)`.
pub fn general_factor(gamma: &BigRational, k: u32) -> BigRational {
    gamma * (gamma + BigRational::one()) * int(u64::from(k) + 1)
}

pub fn mds_general(g: &WeightedGraph, k: u32, seed: u64) -> Result<DominatingSetResult, MdsError> {
    mds_general_with(g, k, &mut RunOptions::seeded(seed))
}

/// Extension from the empty set with `x_v = τ_v/(Δ+1)` and `λ = 1/(Δ+1)`.
pub fn mds_general_with(
    g: &WeightedGraph,
    k: u32,
    opts: &mut RunOptions,
) -> Result<DominatingSetResult, MdsError> {
    if k == 0 {
        return Err(MdsError::InvalidParams("k must be at least 1".into()));
    }
    let delta = g.max_degree();
    let gamma = general_gamma(delta, k);
    let lambda = BigRational::one() / int(delta as u64 + 1);
    let (phases, iterations) = extension_schedule(&lambda, &gamma, delta);
    let program = ExtensionProgram::new(
        None,
        &BigRational::zero(),
        gamma.clone(),
        delta,
        phases,
        iterations,
    );
    let sim = run_extension(g, &program, opts, &BigRational::zero())?;
    let initial: Vec<PackingEntry> = sim
        .outputs
        .iter()
        .map(|o| PackingEntry::new(o.entry.tau, o.entry.base))
        .collect();
    let ext = collect(g, &program, sim, &BigRational::zero());
    if let Some(v) = first_undominated(g, &ext.added) {
        return Err(MdsError::NotDominating(v));
    }
    Ok(DominatingSetResult {
        algo: Algorithm::General,
        total_weight: g.set_weight(&ext.added),
        dominating: true,
        partial: Vec::new(),
        members: ext.added.clone(),
        certificate: Some(PackingAssignment {
            eps: BigRational::zero(),
            gamma: gamma.clone(),
            entries: initial,
        }),
        iterations: 0,
        rounds: ext.rounds,
        claimed_factor: general_factor(&gamma, k),
        guarantee: Guarantee::ExpectedOpt,
        eps: None,
        lambda: Some(lambda),
        gamma: Some(gamma),
        phases: Some(ext.phases),
        phase_iterations: Some(ext.iterations),
        max_message_bits: ext.max_message_bits,
        total_messages: ext.total_messages,
        orientation_out_degree: None,
        local_alpha: None,
        cover_counts: Some(ext.tally.counts),
    })
}
