use num_rational::BigRational;
use num_traits::One;

use super::HasPacking;
use crate::graph::NodeId;
use crate::packing::PackingEntry;
use crate::rational::int;
use crate::simulator::{Knowns, Message, NodeContext, NodeProgram, Outbox, Payload, ProgramFault};

/// `τ_v`, the smallest weight in the closed neighbourhood, after one
/// exchange of weights.
pub struct TauProgram;

#[derive(Clone, Debug)]
pub enum PdMsg {
    Weight(u64),
    Value { tau: u64, i: u32 },
    Join,
    Select,
}

impl Message for PdMsg {
    fn payload(&self) -> Payload {
        match *self {
            PdMsg::Weight(w) => Payload::new(&[w]),
            PdMsg::Value { tau, i } => Payload::new(&[tau, u64::from(i)]),
            PdMsg::Join | PdMsg::Select => Payload::new(&[]),
        }
    }
}

impl NodeProgram for TauProgram {
    type State = u64;
    type Msg = PdMsg;
    type Output = u64;

    fn init(&self, ctx: &NodeContext) -> (u64, bool) {
        (ctx.weight, false)
    }

    fn on_round(
        &self,
        ctx: &NodeContext,
        tau: &mut u64,
        inbox: &[(NodeId, PdMsg)],
        out: &mut Outbox<PdMsg>,
    ) -> Result<bool, ProgramFault> {
        if ctx.round == 1 {
            out.broadcast(PdMsg::Weight(ctx.weight));
            return Ok(false);
        }
        for (_, m) in inbox {
            if let PdMsg::Weight(w) = *m {
                *tau = (*tau).min(w);
            }
        }
        Ok(true)
    }

    fn output(&self, _: &NodeContext, tau: &u64) -> u64 {
        *tau
    }
}

/// What happens after the last iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finish {
    /// Stop; the partial set and the packing are the output.
    Partial,
    /// Each undominated node adds the lowest-id node of weight `τ_v` in its
    /// closed neighbourhood.
    CheapestNeighbor,
    /// Each undominated node adds itself.
    Undominated,
}

/// Known-`Δ` primal-dual iterations.
///
/// Round 1 exchanges weights, round 2 fixes `τ_v` and announces
/// `x_v = τ_v/(Δ+1)`. Iteration `k` occupies rounds `2k+1` (tightness test,
/// joins announced) and `2k+2` (domination learned, undominated nodes grow
/// by `1+ε`). The finishing step runs in round `2r+2`; cheapest-neighbour
/// selections are received in round `2r+3`.
pub struct PrimalDualProgram {
    one_plus_eps: BigRational,
    iterations: u32,
    finish: Finish,
    base: u64,
    /// `(1+ε)^k / (Δ+1)` for `k = 0..=iterations`.
    scaled: Vec<BigRational>,
}

impl PrimalDualProgram {
    pub fn new(
        eps: BigRational,
        iterations: u32,
        finish: Finish,
        knowns: &Knowns,
    ) -> Result<Self, ProgramFault> {
        let delta = knowns
            .max_degree
            .ok_or_else(|| ProgramFault("maximum degree must be known".into()))?;
        let base = delta as u64 + 1;
        let one_plus_eps = BigRational::one() + eps;
        let mut scaled = vec![BigRational::one() / int(base)];
        for k in 1..=iterations as usize {
            let next = &scaled[k - 1] * &one_plus_eps;
            scaled.push(next);
        }
        Ok(PrimalDualProgram {
            one_plus_eps,
            iterations,
            finish,
            base,
            scaled,
        })
    }

    fn finish_round(&self, ctx: &NodeContext, s: &mut PdState, out: &mut Outbox<PdMsg>) -> bool {
        match self.finish {
            Finish::Partial => true,
            Finish::Undominated => {
                s.extension |= !s.dominated;
                true
            }
            Finish::CheapestNeighbor => {
                if !s.dominated {
                    let tau = s.tau.expect("tau is fixed in round 2");
                    let pick = std::iter::once((ctx.id, ctx.weight))
                        .chain(
                            ctx.neighbors
                                .iter()
                                .copied()
                                .zip(s.nbr_weight.iter().copied()),
                        )
                        .filter(|&(_, w)| w == tau)
                        .map(|(u, _)| u)
                        .min()
                        .expect("the node achieving tau is in the closed neighbourhood");
                    if pick == ctx.id {
                        s.extension = true;
                    } else {
                        out.send(pick, PdMsg::Select);
                    }
                }
                false
            }
        }
    }

    fn load(&self, s: &PdState) -> BigRational {
        let own = int(s.tau.unwrap_or(0)) * &self.scaled[s.i as usize];
        s.nbr_tau
            .iter()
            .zip(&s.nbr_i)
            .fold(own, |acc, (&t, &i)| acc + int(t) * &self.scaled[i as usize])
    }
}

#[derive(Clone, Debug)]
pub struct PdState {
    pub tau: Option<u64>,
    pub i: u32,
    pub in_s: bool,
    pub dominated: bool,
    pub extension: bool,
    base: u64,
    nbr_weight: Vec<u64>,
    nbr_tau: Vec<u64>,
    nbr_i: Vec<u32>,
}

impl HasPacking for PdState {
    fn packing_entry(&self) -> PackingEntry {
        PackingEntry {
            tau: self.tau.unwrap_or(0),
            i: self.i,
            j: 0,
            base: self.base,
            frozen: self.dominated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdOutput {
    pub in_s: bool,
    pub extension: bool,
    pub dominated: bool,
    pub entry: PackingEntry,
}

fn slot(ctx: &NodeContext, src: NodeId) -> usize {
    ctx.neighbors
        .binary_search(&src)
        .expect("messages only arrive from neighbours")
}

impl NodeProgram for PrimalDualProgram {
    type State = PdState;
    type Msg = PdMsg;
    type Output = PdOutput;

    fn init(&self, ctx: &NodeContext) -> (PdState, bool) {
        let d = ctx.degree();
        let state = PdState {
            tau: None,
            i: 0,
            in_s: false,
            dominated: false,
            extension: false,
            base: self.base,
            nbr_weight: vec![0; d],
            nbr_tau: vec![0; d],
            nbr_i: vec![0; d],
        };
        (state, false)
    }

    fn on_round(
        &self,
        ctx: &NodeContext,
        s: &mut PdState,
        inbox: &[(NodeId, PdMsg)],
        out: &mut Outbox<PdMsg>,
    ) -> Result<bool, ProgramFault> {
        let round = ctx.round;
        let last = 2 * self.iterations + 2;
        match round {
            1 => {
                out.broadcast(PdMsg::Weight(ctx.weight));
                Ok(false)
            }
            2 => {
                for (src, m) in inbox {
                    if let PdMsg::Weight(w) = *m {
                        s.nbr_weight[slot(ctx, *src)] = w;
                    }
                }
                let tau = s.nbr_weight.iter().copied().fold(ctx.weight, u64::min);
                s.tau = Some(tau);
                if self.iterations == 0 {
                    return Ok(self.finish_round(ctx, s, out));
                }
                out.broadcast(PdMsg::Value { tau, i: 0 });
                Ok(false)
            }
            r if r <= last && r % 2 == 1 => {
                for (src, m) in inbox {
                    if let PdMsg::Value { tau, i } = *m {
                        let k = slot(ctx, *src);
                        s.nbr_tau[k] = tau;
                        s.nbr_i[k] = i;
                    }
                }
                if !s.in_s {
                    let threshold = int(ctx.weight);
                    if self.load(s) * &self.one_plus_eps >= threshold {
                        s.in_s = true;
                        s.dominated = true;
                        out.broadcast(PdMsg::Join);
                    }
                }
                Ok(false)
            }
            r if r <= last => {
                if inbox.iter().any(|(_, m)| matches!(m, PdMsg::Join)) {
                    s.dominated = true;
                }
                if !s.dominated {
                    s.i += 1;
                }
                if r < last {
                    if !s.dominated {
                        out.broadcast(PdMsg::Value {
                            tau: s.tau.unwrap(),
                            i: s.i,
                        });
                    }
                    Ok(false)
                } else {
                    Ok(self.finish_round(ctx, s, out))
                }
            }
            _ => {
                if inbox.iter().any(|(_, m)| matches!(m, PdMsg::Select)) {
                    s.extension = true;
                }
                Ok(true)
            }
        }
    }

    fn output(&self, _: &NodeContext, s: &PdState) -> PdOutput {
        PdOutput {
            in_s: s.in_s,
            extension: s.extension,
            dominated: s.dominated,
            entry: s.packing_entry(),
        }
    }
}
