//! Ground truth for small instances: exact minimum weighted dominating set,
//! domination and packing checks, and the conversion of a dominating set of
//! the lower-bound graph into a fractional vertex cover of its base graph.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{LowerBoundGraph, NodeId, NodeRole, WeightedGraph};
use crate::packing::PackingAssignment;
use crate::rational::{int, ratio};

pub const EXACT_LIMIT: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} nodes, the exact solver stops at {EXACT_LIMIT}")]
    TooLarge { n: usize },
    #[error("packing violates the constraint of node {0}")]
    InfeasiblePacking(NodeId),
    #[error("node {0} is not dominated")]
    NotDominating(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub opt_weight: u64,
    pub witness: Vec<NodeId>,
    /// Search-tree nodes visited.
    pub explored: u64,
}

pub fn is_dominating(g: &WeightedGraph, set: &[NodeId]) -> bool {
    first_undominated(g, set).is_none()
}

pub fn first_undominated(g: &WeightedGraph, set: &[NodeId]) -> Option<NodeId> {
    let mut covered = vec![false; g.n()];
    for &v in set {
        for u in g.closed_neighborhood(v) {
            covered[u] = true;
        }
    }
    covered.iter().position(|c| !c)
}

/// First node `u` with `X_u > w_u`, if any.
pub fn load_violation(g: &WeightedGraph, values: &[BigRational]) -> Option<NodeId> {
    (0..g.n()).find(|&u| {
        let load = g
            .closed_neighborhood(u)
            .fold(BigRational::zero(), |acc, v| acc + &values[v]);
        load > int(g.weight(u))
    })
}

/// `Err(u)` names the first node whose constraint is violated.
pub fn packing_feasible(g: &WeightedGraph, x: &PackingAssignment) -> Result<(), NodeId> {
    match load_violation(g, &x.values()) {
        Some(u) => Err(u),
        None => Ok(()),
    }
}

/// Weak duality: a feasible packing never exceeds the optimum.
pub fn duality_check(
    g: &WeightedGraph,
    x: &PackingAssignment,
    oracle: &OracleResult,
) -> Result<bool, OracleError> {
    packing_feasible(g, x).map_err(OracleError::InfeasiblePacking)?;
    Ok(x.total() <= int(oracle.opt_weight))
}

struct Search<'a> {
    n: usize,
    weights: &'a [u64],
    cover: Vec<u32>,
    /// Dominators of each node in branching order.
    choices: Vec<Vec<usize>>,
    best: u64,
    best_set: u32,
    explored: u64,
}

impl Search<'_> {
    /// Each undominated node pays the cheapest share `w_v / |N^+_v ∩ U|`
    /// among its allowed dominators; any cover of `U` costs at least the sum.
    fn lower_bound(&self, undominated: u32, banned: u32) -> f64 {
        let mut total = 0.0;
        let mut rest = undominated;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += self.choices[u]
                .iter()
                .filter(|&&v| banned >> v & 1 == 0)
                .map(|&v| {
                    self.weights[v] as f64 / f64::from((self.cover[v] & undominated).count_ones())
                })
                .fold(f64::INFINITY, f64::min);
        }
        total
    }

    fn go(&mut self, chosen: u32, banned: u32, cost: u64, undominated: u32) {
        self.explored += 1;
        if undominated == 0 {
            if cost < self.best {
                self.best = cost;
                self.best_set = chosen;
            }
            return;
        }
        let bound = self.lower_bound(undominated, banned);
        if !bound.is_finite() || cost as f64 + bound * (1.0 - 1e-9) >= self.best as f64 {
            return;
        }
        let mut pick = 0;
        let mut fewest = usize::MAX;
        for u in 0..self.n {
            if undominated >> u & 1 == 1 {
                let options = self.choices[u]
                    .iter()
                    .filter(|&&v| banned >> v & 1 == 0)
                    .count();
                if options < fewest {
                    fewest = options;
                    pick = u;
                }
            }
        }
        // Later branches exclude earlier candidates, so no set is visited
        // twice.
        let mut banned = banned;
        for k in 0..self.choices[pick].len() {
            let v = self.choices[pick][k];
            if banned >> v & 1 == 1 {
                continue;
            }
            let next = cost + self.weights[v];
            if next < self.best {
                self.go(chosen | 1 << v, banned, next, undominated & !self.cover[v]);
            }
            banned |= 1 << v;
        }
    }
}

fn mask_to_set(mask: u32) -> Vec<NodeId> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

/// Minimum weighted dominating set by branch and bound. Candidates are tried
/// by descending degree, then ascending weight, then id, which makes the
/// witness deterministic.
pub fn exact_mds(g: &WeightedGraph) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(OracleError::TooLarge { n });
    }
    let cover: Vec<u32> = (0..n)
        .map(|v| g.closed_neighborhood(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), g.weight(v), v));
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let choices = (0..n)
        .map(|u| {
            let mut c: Vec<usize> = g.closed_neighborhood(u).collect();
            c.sort_by_key(|&v| rank[v]);
            c
        })
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut search = Search {
        n,
        weights: g.weights(),
        cover,
        choices,
        best: g.weights().iter().sum::<u64>() + 1,
        best_set: full,
        explored: 0,
    };
    search.go(0, 0, 0, full);
    Ok(OracleResult {
        opt_weight: search.best,
        witness: mask_to_set(search.best_set),
        explored: search.explored,
    })
}

/// Enumerates all `2^n` subsets; the reference for [`exact_mds`] on small
/// graphs.
pub fn brute_force_mds(g: &WeightedGraph) -> Result<u64, OracleError> {
    let n = g.n();
    if n > 20 {
        return Err(OracleError::TooLarge { n });
    }
    let cover: Vec<u32> = (0..n)
        .map(|v| g.closed_neighborhood(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    let mut best = u64::MAX;
    for set in 0..=full {
        let mut covered = 0;
        let mut weight = 0;
        for (v, &c) in cover.iter().enumerate() {
            if set >> v & 1 == 1 {
                covered |= c;
                weight += g.weight(v);
            }
        }
        if covered == full {
            best = best.min(weight);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalVC {
    pub y: Vec<BigRational>,
}

impl FractionalVC {
    pub fn total(&self) -> BigRational {
        self.y.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// First edge with `y_u + y_v < 1`.
    pub fn violation(&self, g: &WeightedGraph) -> Option<(NodeId, NodeId)> {
        g.edges()
            .find(|&(u, v)| &self.y[u] + &self.y[v] < BigRational::one())
    }

    pub fn in_unit_range(&self) -> bool {
        self.y
            .iter()
            .all(|v| *v >= BigRational::zero() && *v <= BigRational::one())
    }
}

/// Middle nodes in the set are replaced by the copy of their lower-id
/// endpoint; `y_v` is then the fraction of copies whose part of the set
/// contains `v`. Every copy part is a vertex cover of the base graph because
/// each middle node must be dominated.
pub fn ds_to_fractional_vc(
    h: &LowerBoundGraph,
    set: &[NodeId],
) -> Result<FractionalVC, OracleError> {
    if let Some(u) = first_undominated(&h.graph, set) {
        return Err(OracleError::NotDominating(u));
    }
    let copies = h.copies();
    let mut in_copy = vec![vec![false; h.base_n]; copies];
    for &v in set {
        match h.role(v) {
            NodeRole::Copy { copy, original } => in_copy[copy][original] = true,
            NodeRole::Middle { copy, edge: (a, b) } => {
                in_copy[copy][a.min(b)] = true;
            }
            NodeRole::Hub { .. } => {}
        }
    }
    let y = (0..h.base_n)
        .map(|v| {
            let count = in_copy.iter().filter(|c| c[v]).count();
            ratio(count as i64, copies as i64)
        })
        .collect();
    Ok(FractionalVC { y })
}

/// Optimal fractional vertex cover. Vertices of the polytope are
/// half-integral, so enumerating `{0, 1/2, 1}^n` is exact.
pub fn min_fractional_vc(g: &WeightedGraph) -> Result<FractionalVC, OracleError> {
    let n = g.n();
    if n > 10 {
        return Err(OracleError::TooLarge { n });
    }
    let edges: Vec<_> = g.edges().collect();
    let mut best: Option<(u32, Vec<u8>)> = None;
    let mut halves = vec![0u8; n];
    loop {
        if edges.iter().all(|&(u, v)| halves[u] + halves[v] >= 2) {
            let total: u32 = halves.iter().map(|&h| u32::from(h)).sum();
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, halves.clone()));
            }
        }
        let mut k = 0;
        while k < n && halves[k] == 2 {
            halves[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        halves[k] += 1;
    }
    let (_, halves) = best.expect("all ones is a cover");
    Ok(FractionalVC {
        y: halves.into_iter().map(|h| ratio(i64::from(h), 2)).collect(),
    })
}
