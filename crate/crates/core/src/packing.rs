//! Dual packing values `x_v = τ_v (1+ε)^i γ^j / base_v`, kept symbolically
//! as integers and evaluated exactly on demand.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{NodeId, WeightedGraph};
use crate::rational::{int, serde_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PackingEntry {
    pub tau: u64,
    /// Number of `(1+ε)` multiplications.
    pub i: u32,
    /// Number of `γ` multiplications.
    pub j: u32,
    pub base: u64,
    /// Set once the node is dominated; the value never changes afterwards.
    pub frozen: bool,
}

impl PackingEntry {
    pub fn new(tau: u64, base: u64) -> Self {
        PackingEntry {
            tau,
            i: 0,
            j: 0,
            base,
            frozen: false,
        }
    }
}

/// Cached powers `b^0, b^1, ...` of a rational.
#[derive(Clone, Debug)]
pub struct Powers {
    table: Vec<BigRational>,
}

impl Powers {
    pub fn new(base: BigRational) -> Self {
        Powers {
            table: vec![BigRational::one(), base],
        }
    }

    pub fn get(&mut self, k: u32) -> &BigRational {
        let k = k as usize;
        while self.table.len() <= k {
            let next = self.table.last().unwrap() * &self.table[1];
            self.table.push(next);
        }
        &self.table[k]
    }
}

/// Evaluates entries that share `ε` and `γ`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    growth: Powers,
    gamma: Powers,
}

impl Evaluator {
    pub fn new(eps: &BigRational, gamma: &BigRational) -> Self {
        Evaluator {
            growth: Powers::new(BigRational::one() + eps),
            gamma: Powers::new(gamma.clone()),
        }
    }

    pub fn value(&mut self, e: &PackingEntry) -> BigRational {
        let scale = self.growth.get(e.i) * self.gamma.get(e.j);
        scale * int(e.tau) / int(e.base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingAssignment {
    #[serde(with = "serde_rational")]
    pub eps: BigRational,
    #[serde(with = "serde_rational")]
    pub gamma: BigRational,
    pub entries: Vec<PackingEntry>,
}

impl PackingAssignment {
    pub fn values(&self) -> Vec<BigRational> {
        let mut ev = Evaluator::new(&self.eps, &self.gamma);
        self.entries.iter().map(|e| ev.value(e)).collect()
    }

    pub fn value(&self, v: NodeId) -> BigRational {
        Evaluator::new(&self.eps, &self.gamma).value(&self.entries[v])
    }

    pub fn total(&self) -> BigRational {
        self.values()
            .into_iter()
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// `X_u` for every node.
    pub fn loads(&self, g: &WeightedGraph) -> Vec<BigRational> {
        let values = self.values();
        (0..g.n())
            .map(|u| {
                g.closed_neighborhood(u)
                    .fold(BigRational::zero(), |acc, v| acc + &values[v])
            })
            .collect()
    }
}
