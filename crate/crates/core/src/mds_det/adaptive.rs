//! Self-terminating primal-dual iterations for nodes that do not know `Δ`
//! (and, optionally, not `α` either).

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::HasPacking;
use crate::graph::{NodeId, Orientation, WeightedGraph};
use crate::packing::{PackingEntry, Powers};
use crate::rational::{ceil_log, int};
use crate::simulator::{Message, NodeContext, NodeProgram, Outbox, Payload, ProgramFault};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdaptiveMode {
    /// `α` known; every node uses `λ = 1/((2α+1)(1+ε))` and starts from
    /// `τ_v / max_{u ∈ N^+_v} |N^+_u|`.
    UnknownDelta { alpha: u32 },
    /// Only `n` known; an orientation is computed first by peeling.
    UnknownAlpha {
        n: usize,
        guesses: u32,
        phase_len: u32,
    },
}

#[derive(Clone, Debug)]
pub enum AdaptiveMsg {
    Hello { weight: u64, degree: u32 },
    Peeled,
    OutDegree(u32),
    Init { tau: u64, base: u64, settled: bool },
    Packet { i: u32, settled: bool },
    Join,
    Select,
}

impl Message for AdaptiveMsg {
    fn payload(&self) -> Payload {
        match *self {
            AdaptiveMsg::Hello { weight, degree } => Payload::new(&[weight, u64::from(degree)]),
            AdaptiveMsg::OutDegree(d) => Payload::new(&[u64::from(d)]),
            AdaptiveMsg::Init { tau, base, settled } => {
                Payload::new(&[tau, 2 * base + u64::from(settled)])
            }
            AdaptiveMsg::Packet { i, settled } => {
                Payload::new(&[2 * u64::from(i) + u64::from(settled)])
            }
            AdaptiveMsg::Peeled | AdaptiveMsg::Join | AdaptiveMsg::Select => Payload::new(&[]),
        }
    }
}

/// Iteration `k` takes two rounds starting at [`AdaptiveProgram::stage_start`]:
///
/// * A: learn joins, grow if still undominated, then the early-exit step:
///   an undominated node whose value exceeds `λ_v τ_v` selects the
///   lowest-id node of weight `τ_v` in its closed neighbourhood and stops
///   growing. Changes are announced.
/// * B: collect values and selections, run the tightness test, announce
///   joins. A node halts here once it and all its neighbours are settled
///   (dominated or having selected), since nothing in its closed
///   neighbourhood can change afterwards.
pub struct AdaptiveProgram {
    one_plus_eps: BigRational,
    /// `2 + ε`, the peeling slack.
    peel_slack: BigRational,
    mode: AdaptiveMode,
}

impl AdaptiveProgram {
    pub fn unknown_delta(eps: BigRational, alpha: u32) -> Self {
        AdaptiveProgram {
            one_plus_eps: BigRational::one() + &eps,
            peel_slack: int(2) + eps,
            mode: AdaptiveMode::UnknownDelta { alpha },
        }
    }

    /// Peeling runs `⌊log2 n⌋ + 1` guesses `A = 1, 2, 4, ...` of
    /// `max(1, ⌈log_{1+ε/2} n⌉)` rounds each; in a round every remaining
    /// node with at most `(2+ε)A` remaining neighbours leaves and orients
    /// its remaining edges outward. Nodes leaving in the same round orient
    /// their shared edge from the lower id to the higher one.
    pub fn unknown_alpha(eps: BigRational, n: usize) -> Self {
        let n_big = int(n as u64);
        let shrink = BigRational::one() + &eps / int(2);
        let guesses = usize::BITS - n.max(1).leading_zeros();
        let phase_len = ceil_log(&shrink, &n_big).max(1);
        AdaptiveProgram {
            one_plus_eps: BigRational::one() + &eps,
            peel_slack: int(2) + eps,
            mode: AdaptiveMode::UnknownAlpha {
                n,
                guesses,
                phase_len,
            },
        }
    }

    pub fn mode(&self) -> AdaptiveMode {
        self.mode
    }

    pub fn orientation_rounds(&self) -> u32 {
        match self.mode {
            AdaptiveMode::UnknownDelta { .. } => 0,
            AdaptiveMode::UnknownAlpha {
                guesses, phase_len, ..
            } => guesses * phase_len,
        }
    }

    /// Round of the first A step.
    pub fn stage_start(&self) -> u32 {
        match self.mode {
            AdaptiveMode::UnknownDelta { .. } => 2,
            AdaptiveMode::UnknownAlpha { .. } => self.orientation_rounds() + 2,
        }
    }

    fn lambda(&self, alpha: u32) -> BigRational {
        BigRational::one() / (int(2 * u64::from(alpha) + 1) * &self.one_plus_eps)
    }

    fn peel_step(&self, ctx: &NodeContext, s: &mut AdaptiveState, inbox: &[(NodeId, AdaptiveMsg)]) {
        let round = ctx.round;
        for (src, m) in inbox {
            if let AdaptiveMsg::Peeled = m {
                let k = slot(ctx, *src);
                s.nbr_peeled[k] = true;
                if s.peeled_round == Some(round - 1) && ctx.id > *src {
                    s.out_edge[k] = false;
                }
            }
        }
    }

    fn setup(
        &self,
        ctx: &NodeContext,
        s: &mut AdaptiveState,
        inbox: &[(NodeId, AdaptiveMsg)],
        out: &mut Outbox<AdaptiveMsg>,
    ) -> Result<(), ProgramFault> {
        match self.mode {
            AdaptiveMode::UnknownDelta { .. } => {
                out.broadcast(AdaptiveMsg::Hello {
                    weight: ctx.weight,
                    degree: ctx.degree() as u32,
                });
            }
            AdaptiveMode::UnknownAlpha { phase_len, .. } => {
                self.peel_step(ctx, s, inbox);
                let round = ctx.round;
                if round <= self.orientation_rounds() {
                    if s.peeled_round.is_none() {
                        let guess = (round - 1) / phase_len;
                        let cap = &self.peel_slack * int(1u64 << guess);
                        let residual = s.nbr_peeled.iter().filter(|p| !**p).count();
                        if int(residual as u64) <= cap {
                            s.peeled_round = Some(round);
                            for (o, p) in s.out_edge.iter_mut().zip(&s.nbr_peeled) {
                                *o = !p;
                            }
                            out.broadcast(AdaptiveMsg::Peeled);
                        }
                    }
                } else {
                    if s.peeled_round.is_none() {
                        return Err(ProgramFault(
                            "node still unpeeled after the last guess".into(),
                        ));
                    }
                    let d = s.out_edge.iter().filter(|o| **o).count() as u32;
                    s.out_degree = Some(d);
                    out.broadcast(AdaptiveMsg::OutDegree(d));
                }
            }
        }
        Ok(())
    }

    fn begin_stage(
        &self,
        ctx: &NodeContext,
        s: &mut AdaptiveState,
        inbox: &[(NodeId, AdaptiveMsg)],
    ) {
        let lambda = match self.mode {
            AdaptiveMode::UnknownDelta { alpha } => {
                let mut widest = ctx.degree() as u64 + 1;
                for (src, m) in inbox {
                    if let AdaptiveMsg::Hello { weight, degree } = *m {
                        s.nbr_weight[slot(ctx, *src)] = weight;
                        widest = widest.max(u64::from(degree) + 1);
                    }
                }
                s.base = widest;
                self.lambda(alpha)
            }
            AdaptiveMode::UnknownAlpha { n, .. } => {
                let mut local = s.out_degree.unwrap_or(0);
                for (_, m) in inbox {
                    if let AdaptiveMsg::OutDegree(d) = *m {
                        local = local.max(d);
                    }
                }
                s.local_alpha = Some(local);
                s.nbr_weight.iter_mut().for_each(|w| *w = 1);
                s.base = n as u64 + 1;
                self.lambda(local)
            }
        };
        s.tau = s.nbr_weight.iter().copied().fold(ctx.weight, u64::min);
        s.threshold = lambda * int(s.base);
    }

    fn stage_a(
        &self,
        ctx: &NodeContext,
        s: &mut AdaptiveState,
        k: u32,
        inbox: &[(NodeId, AdaptiveMsg)],
        out: &mut Outbox<AdaptiveMsg>,
    ) {
        if k == 1 {
            self.begin_stage(ctx, s, inbox);
        } else {
            if inbox.iter().any(|(_, m)| matches!(m, AdaptiveMsg::Join)) {
                s.dominated = true;
            }
            if !s.dominated && !s.handled {
                s.i += 1;
            }
        }
        if !s.dominated && !s.handled && s.powers.get(s.i) > &s.threshold {
            s.handled = true;
            let pick = std::iter::once((ctx.id, ctx.weight))
                .chain(
                    ctx.neighbors
                        .iter()
                        .copied()
                        .zip(s.nbr_weight.iter().copied()),
                )
                .filter(|&(_, w)| w == s.tau)
                .map(|(u, _)| u)
                .min()
                .expect("the node achieving tau is in the closed neighbourhood");
            if pick == ctx.id {
                s.extension = true;
            } else {
                out.send(pick, AdaptiveMsg::Select);
            }
        }
        let settled = s.dominated || s.handled;
        if k == 1 {
            out.broadcast(AdaptiveMsg::Init {
                tau: s.tau,
                base: s.base,
                settled,
            });
        } else if (s.i, settled) != s.last_sent {
            out.broadcast(AdaptiveMsg::Packet { i: s.i, settled });
        }
        s.last_sent = (s.i, settled);
    }

    fn stage_b(
        &self,
        ctx: &NodeContext,
        s: &mut AdaptiveState,
        k: u32,
        inbox: &[(NodeId, AdaptiveMsg)],
        out: &mut Outbox<AdaptiveMsg>,
    ) -> bool {
        for (src, m) in inbox {
            match *m {
                AdaptiveMsg::Init { tau, base, settled } => {
                    let j = slot(ctx, *src);
                    s.nbr_tau[j] = tau;
                    s.nbr_base[j] = base;
                    s.nbr_i[j] = 0;
                    s.nbr_settled[j] = settled;
                }
                AdaptiveMsg::Packet { i, settled } => {
                    let j = slot(ctx, *src);
                    s.nbr_i[j] = i;
                    s.nbr_settled[j] = settled;
                }
                AdaptiveMsg::Select => s.extension = true,
                _ => {}
            }
        }
        if !s.in_s && self.load(s) * &self.one_plus_eps >= int(ctx.weight) {
            s.in_s = true;
            s.dominated = true;
            out.broadcast(AdaptiveMsg::Join);
        }
        s.iterations = k;
        s.last_sent.1 && s.nbr_settled.iter().all(|&x| x)
    }

    fn load(&self, s: &mut AdaptiveState) -> BigRational {
        let mut total = int(s.tau) * s.powers.get(s.i) / int(s.base);
        for j in 0..s.nbr_tau.len() {
            total += int(s.nbr_tau[j]) * s.powers.get(s.nbr_i[j]) / int(s.nbr_base[j]);
        }
        total
    }
}

#[derive(Clone, Debug)]
pub struct AdaptiveState {
    nbr_weight: Vec<u64>,
    nbr_peeled: Vec<bool>,
    out_edge: Vec<bool>,
    peeled_round: Option<u32>,
    out_degree: Option<u32>,
    pub local_alpha: Option<u32>,
    pub tau: u64,
    pub base: u64,
    pub i: u32,
    pub in_s: bool,
    pub dominated: bool,
    pub handled: bool,
    pub extension: bool,
    /// `λ_v · base_v`: the node selects a dominator once `(1+ε)^i` exceeds it.
    threshold: BigRational,
    nbr_tau: Vec<u64>,
    nbr_base: Vec<u64>,
    nbr_i: Vec<u32>,
    nbr_settled: Vec<bool>,
    last_sent: (u32, bool),
    iterations: u32,
    powers: Powers,
}

impl HasPacking for AdaptiveState {
    fn packing_entry(&self) -> PackingEntry {
        PackingEntry {
            tau: self.tau,
            i: self.i,
            j: 0,
            base: self.base,
            frozen: self.dominated || self.handled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptiveOutput {
    pub in_s: bool,
    pub extension: bool,
    pub dominated: bool,
    pub handled: bool,
    pub entry: PackingEntry,
    pub out_neighbors: Vec<NodeId>,
    pub local_alpha: Option<u32>,
    pub iterations: u32,
}

fn slot(ctx: &NodeContext, src: NodeId) -> usize {
    ctx.neighbors
        .binary_search(&src)
        .expect("messages only arrive from neighbours")
}

impl NodeProgram for AdaptiveProgram {
    type State = AdaptiveState;
    type Msg = AdaptiveMsg;
    type Output = AdaptiveOutput;

    fn init(&self, ctx: &NodeContext) -> (AdaptiveState, bool) {
        let d = ctx.degree();
        let state = AdaptiveState {
            nbr_weight: vec![0; d],
            nbr_peeled: vec![false; d],
            out_edge: vec![false; d],
            peeled_round: None,
            out_degree: None,
            local_alpha: None,
            // zero value until the stage starts
            tau: 0,
            base: 1,
            i: 0,
            in_s: false,
            dominated: false,
            handled: false,
            extension: false,
            threshold: BigRational::zero(),
            nbr_tau: vec![0; d],
            nbr_base: vec![1; d],
            nbr_i: vec![0; d],
            nbr_settled: vec![false; d],
            last_sent: (0, false),
            iterations: 0,
            powers: Powers::new(self.one_plus_eps.clone()),
        };
        (state, false)
    }

    fn on_round(
        &self,
        ctx: &NodeContext,
        s: &mut AdaptiveState,
        inbox: &[(NodeId, AdaptiveMsg)],
        out: &mut Outbox<AdaptiveMsg>,
    ) -> Result<bool, ProgramFault> {
        let start = self.stage_start();
        if ctx.round < start {
            self.setup(ctx, s, inbox, out)?;
            return Ok(false);
        }
        let offset = ctx.round - start;
        let k = offset / 2 + 1;
        if offset.is_multiple_of(2) {
            self.stage_a(ctx, s, k, inbox, out);
            Ok(false)
        } else {
            Ok(self.stage_b(ctx, s, k, inbox, out))
        }
    }

    fn output(&self, ctx: &NodeContext, s: &AdaptiveState) -> AdaptiveOutput {
        AdaptiveOutput {
            in_s: s.in_s,
            extension: s.extension,
            dominated: s.dominated,
            handled: s.handled,
            entry: s.packing_entry(),
            out_neighbors: ctx
                .neighbors
                .iter()
                .zip(&s.out_edge)
                .filter(|(_, o)| **o)
                .map(|(u, _)| *u)
                .collect(),
            local_alpha: s.local_alpha,
            iterations: s.iterations,
        }
    }
}

/// Assembles the per-node out-neighbour lists into an orientation, or
/// `None` if some edge is claimed by both or neither endpoint.
pub fn orientation_of(g: &WeightedGraph, outputs: &[AdaptiveOutput]) -> Option<Orientation> {
    let mut forward = Vec::with_capacity(g.m());
    for (u, v) in g.edges() {
        let uv = outputs[u].out_neighbors.binary_search(&v).is_ok();
        let vu = outputs[v].out_neighbors.binary_search(&u).is_ok();
        if uv == vu {
            return None;
        }
        forward.push(uv);
    }
    Some(Orientation::from_directions(g, forward))
}
