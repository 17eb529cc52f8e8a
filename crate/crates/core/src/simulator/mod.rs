//! Synchronous message-passing engine.
//!
//! Every node runs the same [`NodeProgram`]. In round `r` each live node
//! reads the messages its neighbours sent in round `r - 1`, updates its
//! state and queues messages for round `r + 1`. The run ends when every
//! node has halted.

mod message;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{NodeId, WeightedGraph};
use crate::rational::ceil_log2;

pub use message::{Message, Payload};

/// Global facts a node may be told. Each algorithm decides which ones it
/// hands out; the rest stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Knowns {
    pub n: Option<usize>,
    pub max_degree: Option<usize>,
    pub alpha: Option<u32>,
}

impl Knowns {
    pub fn all(g: &WeightedGraph) -> Self {
        Knowns {
            n: Some(g.n()),
            max_degree: Some(g.max_degree()),
            alpha: g.declared_alpha(),
        }
    }
}

/// What a node can see about itself and the world in the current round.
pub struct NodeContext<'a> {
    pub id: NodeId,
    pub weight: u64,
    pub neighbors: &'a [NodeId],
    pub knowns: &'a Knowns,
    pub round: u32,
    seed: u64,
}

impl<'a> NodeContext<'a> {
    pub fn new(
        id: NodeId,
        weight: u64,
        neighbors: &'a [NodeId],
        knowns: &'a Knowns,
        round: u32,
        seed: u64,
    ) -> Self {
        NodeContext {
            id,
            weight,
            neighbors,
            knowns,
            round,
            seed,
        }
    }

    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }

    /// Random stream for this node in this round. The key is the run seed,
    /// the stream id is the node id and the word position is derived from
    /// the round, so draws do not depend on the order nodes are stepped in.
    /// Calling it twice in one round yields the same stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.id as u64);
        rng.set_word_pos(u128::from(self.round) << 32);
        rng
    }
}

/// Messages a node queues during one round.
pub struct Outbox<'a, M> {
    neighbors: &'a [NodeId],
    queued: Vec<(NodeId, M)>,
}

impl<M: Clone> Outbox<'_, M> {
    pub fn send(&mut self, dst: NodeId, msg: M) {
        self.queued.push((dst, msg));
    }

    pub fn broadcast(&mut self, msg: M) {
        for &u in self.neighbors {
            self.queued.push((u, msg.clone()));
        }
    }
}

/// Error raised by a node program; the engine tags it with node and round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramFault(pub String);

pub trait NodeProgram {
    type State: Clone;
    type Msg: Message;
    type Output;

    /// Initial state and whether the node halts before round 1.
    fn init(&self, ctx: &NodeContext) -> (Self::State, bool);

    /// One synchronous round. Returns `true` to halt after this round; the
    /// messages queued in the halting round are still delivered.
    fn on_round(
        &self,
        ctx: &NodeContext,
        state: &mut Self::State,
        inbox: &[(NodeId, Self::Msg)],
        out: &mut Outbox<Self::Msg>,
    ) -> Result<bool, ProgramFault>;

    fn output(&self, ctx: &NodeContext, state: &Self::State) -> Self::Output;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub seed: u64,
    pub round_cap: u32,
    pub keep_trace: bool,
}

impl SimConfig {
    pub fn new(seed: u64, round_cap: u32) -> Self {
        SimConfig {
            seed,
            round_cap,
            keep_trace: false,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.keep_trace = true;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("round cap {cap} exceeded with {live} nodes still running")]
    RoundCapExceeded { cap: u32, live: usize },
    #[error("node {src} sent to non-neighbour {dst} in round {round}")]
    IllegalSend {
        round: u32,
        src: NodeId,
        dst: NodeId,
    },
    #[error("round cap must be at least 1")]
    ZeroRoundCap,
    #[error("no trace was retained for this run")]
    MissingTrace,
    #[error("node {node} failed in round {round}: {msg}")]
    Program {
        node: NodeId,
        round: u32,
        msg: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub round: u32,
    pub src: NodeId,
    pub dst: NodeId,
    pub width_bits: u32,
    pub payload: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationResult<O> {
    pub rounds_executed: u32,
    pub outputs: Vec<O>,
    pub max_message_bits: u32,
    pub total_messages: u64,
    pub trace: Option<Vec<TraceEvent>>,
}

impl<O> SimulationResult<O> {
    /// One line per message: `round src dst width_bits payload_hex`.
    pub fn trace_dump(&self) -> Result<String, SimError> {
        let trace = self.trace.as_ref().ok_or(SimError::MissingTrace)?;
        let mut out = String::new();
        for e in trace {
            out.push_str(&format!(
                "{} {} {} {} {}\n",
                e.round,
                e.src,
                e.dst,
                e.width_bits,
                hex::encode(&e.payload)
            ));
        }
        Ok(out)
    }
}

pub fn run_synchronous<P: NodeProgram>(
    g: &WeightedGraph,
    program: &P,
    knowns: &Knowns,
    config: &SimConfig,
) -> Result<SimulationResult<P::Output>, SimError> {
    run_observed(g, program, knowns, config, |_, _| {})
}

/// Like [`run_synchronous`], calling `observer(round, states)` after every
/// round (and once with round 0 after initialisation).
pub fn run_observed<P, F>(
    g: &WeightedGraph,
    program: &P,
    knowns: &Knowns,
    config: &SimConfig,
    mut observer: F,
) -> Result<SimulationResult<P::Output>, SimError>
where
    P: NodeProgram,
    F: FnMut(u32, &[P::State]),
{
    if config.round_cap == 0 {
        return Err(SimError::ZeroRoundCap);
    }
    let n = g.n();
    let ctx = |v: NodeId, round: u32| NodeContext {
        id: v,
        weight: g.weight(v),
        neighbors: g.neighbors(v),
        knowns,
        round,
        seed: config.seed,
    };

    let mut states = Vec::with_capacity(n);
    let mut halted = Vec::with_capacity(n);
    for v in 0..n {
        let (s, h) = program.init(&ctx(v, 0));
        states.push(s);
        halted.push(h);
    }
    observer(0, &states);

    let mut live = halted.iter().filter(|&&h| !h).count();
    let mut inboxes: Vec<Vec<(NodeId, P::Msg)>> = vec![Vec::new(); n];
    let mut next: Vec<Vec<(NodeId, P::Msg)>> = vec![Vec::new(); n];
    let mut queued = Vec::new();
    let mut trace = config.keep_trace.then(Vec::new);
    let mut round = 0u32;
    let mut max_bits = 0u32;
    let mut total = 0u64;

    while live > 0 {
        if round == config.round_cap {
            return Err(SimError::RoundCapExceeded {
                cap: config.round_cap,
                live,
            });
        }
        round += 1;
        for v in 0..n {
            if halted[v] {
                continue;
            }
            let c = ctx(v, round);
            let mut out = Outbox {
                neighbors: c.neighbors,
                queued: std::mem::take(&mut queued),
            };
            let halt = program
                .on_round(&c, &mut states[v], &inboxes[v], &mut out)
                .map_err(|ProgramFault(msg)| SimError::Program {
                    node: v,
                    round,
                    msg,
                })?;
            for (dst, msg) in out.queued.drain(..) {
                if c.neighbors.binary_search(&dst).is_err() {
                    return Err(SimError::IllegalSend { round, src: v, dst });
                }
                let payload = msg.payload();
                let bits = payload.width_bits();
                max_bits = max_bits.max(bits);
                total += 1;
                if let Some(t) = trace.as_mut() {
                    let mut bytes = Vec::with_capacity(payload.encoded_len());
                    payload.encode(&mut bytes);
                    t.push(TraceEvent {
                        round,
                        src: v,
                        dst,
                        width_bits: bits,
                        payload: bytes,
                    });
                }
                next[dst].push((v, msg));
            }
            queued = out.queued;
            if halt {
                halted[v] = true;
                live -= 1;
            }
        }
        observer(round, &states);
        for (v, inbox) in inboxes.iter_mut().enumerate() {
            inbox.clear();
            if halted[v] {
                next[v].clear();
            }
        }
        std::mem::swap(&mut inboxes, &mut next);
    }

    let outputs = (0..n)
        .map(|v| program.output(&ctx(v, round), &states[v]))
        .collect();
    Ok(SimulationResult {
        rounds_executed: round,
        outputs,
        max_message_bits: max_bits,
        total_messages: total,
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditVerdict {
    Pass,
    Warn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WidthAudit {
    pub max_message_bits: u32,
    pub threshold_bits: u64,
    pub verdict: AuditVerdict,
}

/// Compares the widest traced message against `c * ceil(log2(n + 1))`.
pub fn message_width_audit<O>(
    result: &SimulationResult<O>,
    n: usize,
    c: u64,
) -> Result<WidthAudit, SimError> {
    let trace = result.trace.as_ref().ok_or(SimError::MissingTrace)?;
    let max = trace.iter().map(|e| e.width_bits).max().unwrap_or(0);
    let threshold = c * u64::from(ceil_log2(n as u64 + 1));
    Ok(WidthAudit {
        max_message_bits: max,
        threshold_bits: threshold,
        verdict: if u64::from(max) <= threshold {
            AuditVerdict::Pass
        } else {
            AuditVerdict::Warn
        },
    })
}
