use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::graph::NodeId;
use crate::mds_det::HasPacking;
use crate::packing::{PackingEntry, Powers};
use crate::rational::int;
use crate::simulator::{Message, NodeContext, NodeProgram, Outbox, Payload, ProgramFault};

/// Draws `true` with probability exactly `p` by comparing random bits with
/// the binary expansion of `p`.
pub fn bernoulli<R: Rng>(rng: &mut R, p: &BigRational) -> bool {
    if p >= &BigRational::one() {
        return true;
    }
    if p <= &BigRational::zero() {
        return false;
    }
    let den: &BigInt = p.denom();
    let mut num: BigInt = p.numer().clone();
    let mut bits = 0u64;
    let mut left = 0;
    loop {
        if num.is_zero() {
            return false;
        }
        num <<= 1;
        let p_bit = num >= *den;
        if p_bit {
            num -= den;
        }
        if left == 0 {
            bits = rng.random();
            left = 64;
        }
        let u_bit = bits & 1 == 1;
        bits >>= 1;
        left -= 1;
        if u_bit != p_bit {
            return p_bit;
        }
    }
}

#[derive(Clone, Debug)]
pub enum ExtMsg {
    Weight(u64),
    Init {
        tau: u64,
        i: u32,
        base: u64,
        dominated: bool,
    },
    Sample,
    Dominated,
}

impl Message for ExtMsg {
    fn payload(&self) -> Payload {
        match *self {
            ExtMsg::Weight(w) => Payload::new(&[w]),
            ExtMsg::Init {
                tau,
                i,
                base,
                dominated,
            } => Payload::new(&[tau, u64::from(i), 2 * base + u64::from(dominated)]),
            ExtMsg::Sample | ExtMsg::Dominated => Payload::new(&[]),
        }
    }
}

/// What a node carries over from the partial dominating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtInput {
    pub in_s: bool,
    pub dominated: bool,
    pub entry: PackingEntry,
}

/// Sampling extension of a partial dominating set.
///
/// Round 1 announces the packing entries (preceded by a weight exchange
/// when the packing starts from `τ_v/(Δ+1)`). Then `phases` phases follow,
/// each made of `iterations` pairs of rounds and one rescale round:
///
/// * sampling round: learn newly dominated neighbours; a node of the phase
///   set that is still outside `S ∪ S'` and has residual load
///   `X_u >= w_u/γ` joins `S'` with probability `p`, where `p` starts at
///   `1/(Δ+1)` and grows by `γ` per iteration up to 1;
/// * covering round: a node dominated for the first time records how many
///   samplers reached it;
/// * rescale round: every node outside `S ∪ S'` checks `X_u <= w_u/γ`, and
///   every undominated node multiplies its value by `γ`.
pub struct ExtensionProgram {
    pub(crate) inputs: Option<Vec<ExtInput>>,
    pub(crate) base: u64,
    pub(crate) gamma: BigRational,
    pub(crate) phases: u32,
    pub(crate) iterations: u32,
    pub(crate) growth: BigRational,
    probabilities: Vec<BigRational>,
}

impl ExtensionProgram {
    /// `inputs == None` starts from `x_v = τ_v/(Δ+1)` with `S = ∅`.
    pub fn new(
        inputs: Option<Vec<ExtInput>>,
        eps: &BigRational,
        gamma: BigRational,
        max_degree: usize,
        phases: u32,
        iterations: u32,
    ) -> Self {
        let base = max_degree as u64 + 1;
        let mut probabilities = Vec::with_capacity(iterations as usize);
        let mut p = BigRational::one() / int(base);
        for _ in 0..iterations {
            let clipped = if p > BigRational::one() {
                BigRational::one()
            } else {
                p.clone()
            };
            probabilities.push(clipped);
            p *= &gamma;
        }
        ExtensionProgram {
            inputs,
            base,
            gamma,
            phases,
            iterations,
            growth: BigRational::one() + eps,
            probabilities,
        }
    }

    pub fn probabilities(&self) -> &[BigRational] {
        &self.probabilities
    }

    fn prelude(&self) -> u32 {
        if self.inputs.is_some() {
            1
        } else {
            2
        }
    }

    pub fn total_rounds(&self) -> u32 {
        self.prelude() + self.phases * (2 * self.iterations + 1)
    }

    fn value(&self, tau: u64, i: u32, base: u64) -> BigRational {
        let mut v = int(tau) / int(base);
        for _ in 0..i {
            v *= &self.growth;
        }
        v
    }

    fn announce(&self, s: &mut ExtState, out: &mut Outbox<ExtMsg>) {
        s.own_value = self.value(s.entry.tau, s.entry.i, s.entry.base);
        out.broadcast(ExtMsg::Init {
            tau: s.entry.tau,
            i: s.entry.i,
            base: s.entry.base,
            dominated: s.dominated,
        });
    }

    /// Residual load: values of undominated nodes in `N^+_u`, all of which
    /// have been rescaled once per completed phase.
    fn residual(&self, s: &mut ExtState, completed: u32) -> BigRational {
        let mut sum = BigRational::zero();
        if !s.dominated {
            sum += &s.own_value;
        }
        for (k, v) in s.nbr_value.iter().enumerate() {
            if !s.nbr_dominated[k] {
                sum += v;
            }
        }
        sum * s.gamma_powers.get(completed)
    }

    fn near_tight(&self, ctx: &NodeContext, s: &mut ExtState, completed: u32) -> bool {
        !s.in_s && !s.in_s_prime && self.residual(s, completed) * &self.gamma >= int(ctx.weight)
    }
}

#[derive(Clone, Debug)]
pub struct ExtState {
    pub in_s: bool,
    pub in_s_prime: bool,
    pub dominated: bool,
    pub entry: PackingEntry,
    /// Samplers in `N^+_v` during the iteration that first dominated `v`.
    pub cover_count: u32,
    /// `(phase, iteration)` of first domination by a sampler.
    pub covered_at: Option<(u32, u32)>,
    pub joined_phase: Option<u32>,
    phase_member: bool,
    sampled: bool,
    own_value: BigRational,
    nbr_weight: Vec<u64>,
    nbr_value: Vec<BigRational>,
    nbr_dominated: Vec<bool>,
    gamma_powers: Powers,
}

impl HasPacking for ExtState {
    fn packing_entry(&self) -> PackingEntry {
        self.entry
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtOutput {
    pub in_s: bool,
    pub in_s_prime: bool,
    pub dominated: bool,
    pub entry: PackingEntry,
    pub cover_count: u32,
    pub covered_at: Option<(u32, u32)>,
    pub joined_phase: Option<u32>,
}

fn slot(ctx: &NodeContext, src: NodeId) -> usize {
    ctx.neighbors
        .binary_search(&src)
        .expect("messages only arrive from neighbours")
}

impl NodeProgram for ExtensionProgram {
    type State = ExtState;
    type Msg = ExtMsg;
    type Output = ExtOutput;

    fn init(&self, ctx: &NodeContext) -> (ExtState, bool) {
        let d = ctx.degree();
        let input = match &self.inputs {
            Some(inputs) => inputs[ctx.id],
            None => ExtInput {
                in_s: false,
                dominated: false,
                // value 0 until τ is known
                entry: PackingEntry::new(0, self.base),
            },
        };
        let state = ExtState {
            in_s: input.in_s,
            in_s_prime: false,
            dominated: input.dominated,
            entry: PackingEntry {
                frozen: input.dominated,
                ..input.entry
            },
            cover_count: 0,
            covered_at: None,
            joined_phase: None,
            phase_member: false,
            sampled: false,
            own_value: BigRational::zero(),
            nbr_weight: vec![0; d],
            nbr_value: vec![BigRational::zero(); d],
            nbr_dominated: vec![false; d],
            gamma_powers: Powers::new(self.gamma.clone()),
        };
        (state, false)
    }

    fn on_round(
        &self,
        ctx: &NodeContext,
        s: &mut ExtState,
        inbox: &[(NodeId, ExtMsg)],
        out: &mut Outbox<ExtMsg>,
    ) -> Result<bool, ProgramFault> {
        let round = ctx.round;
        let prelude = self.prelude();
        if round < prelude {
            out.broadcast(ExtMsg::Weight(ctx.weight));
            return Ok(false);
        }
        if round == prelude {
            if self.inputs.is_none() {
                for (src, m) in inbox {
                    if let ExtMsg::Weight(w) = *m {
                        s.nbr_weight[slot(ctx, *src)] = w;
                    }
                }
                s.entry.tau = s.nbr_weight.iter().copied().fold(ctx.weight, u64::min);
            }
            self.announce(s, out);
            return Ok(self.phases == 0);
        }
        for (src, m) in inbox {
            match *m {
                ExtMsg::Init {
                    tau,
                    i,
                    base,
                    dominated,
                } => {
                    let k = slot(ctx, *src);
                    s.nbr_value[k] = self.value(tau, i, base);
                    s.nbr_dominated[k] = dominated;
                }
                ExtMsg::Dominated => s.nbr_dominated[slot(ctx, *src)] = true,
                _ => {}
            }
        }
        let offset = round - prelude - 1;
        let phase_len = 2 * self.iterations + 1;
        let completed = offset / phase_len;
        let phase = completed + 1;
        let step = offset % phase_len;
        if step == 2 * self.iterations {
            if !s.in_s
                && !s.in_s_prime
                && self.residual(s, completed) * &self.gamma > int(ctx.weight)
            {
                return Err(ProgramFault(format!(
                    "residual load above w/γ before rescale in phase {phase}"
                )));
            }
            if !s.dominated {
                s.entry.j += 1;
            }
            return Ok(phase == self.phases);
        }
        let iteration = step / 2 + 1;
        if step.is_multiple_of(2) {
            if iteration == 1 {
                s.phase_member = self.near_tight(ctx, s, completed);
            }
            s.sampled = false;
            if s.phase_member
                && self.near_tight(ctx, s, completed)
                && bernoulli(
                    &mut ctx.rng(),
                    &self.probabilities[(iteration - 1) as usize],
                )
            {
                s.sampled = true;
                s.in_s_prime = true;
                s.joined_phase = Some(phase);
                out.broadcast(ExtMsg::Sample);
            }
        } else {
            let samplers = inbox
                .iter()
                .filter(|(_, m)| matches!(m, ExtMsg::Sample))
                .count() as u32
                + u32::from(s.sampled);
            if !s.dominated && samplers > 0 {
                s.dominated = true;
                s.entry.frozen = true;
                s.cover_count = samplers;
                s.covered_at = Some((phase, iteration));
                out.broadcast(ExtMsg::Dominated);
            }
        }
        Ok(false)
    }

    fn output(&self, _: &NodeContext, s: &ExtState) -> ExtOutput {
        ExtOutput {
            in_s: s.in_s,
            in_s_prime: s.in_s_prime,
            dominated: s.dominated,
            entry: s.entry,
            cover_count: s.cover_count,
            covered_at: s.covered_at,
            joined_phase: s.joined_phase,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bernoulli_edges_and_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(bernoulli(&mut rng, &int(1)));
        assert!(!bernoulli(&mut rng, &int(0)));
        let p = ratio(1, 3);
        let n = 60_000;
        let hits = (0..n).filter(|_| bernoulli(&mut rng, &p)).count() as f64;
        // 5 standard deviations
        let sd = (n as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        assert!((hits - n as f64 / 3.0).abs() < 5.0 * sd);
    }

    #[test]
    fn probability_schedule() {
        let p = ExtensionProgram::new(None, &ratio(1, 2), int(2), 4, 3, 4);
        assert_eq!(
            p.probabilities(),
            &[ratio(1, 5), ratio(2, 5), ratio(4, 5), int(1)]
        );
        assert_eq!(p.total_rounds(), 2 + 3 * 9);
    }
}
