use std::collections::{BTreeSet, VecDeque};

use super::{NodeId, WeightedGraph};

/// A direction for every edge of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// Canonical edge list, `u < v`, same order as [`WeightedGraph::edges`].
    edges: Vec<(NodeId, NodeId)>,
    /// `true` when edge `k` points from its lower endpoint to its higher one.
    forward: Vec<bool>,
    out_degree: Vec<u32>,
}

impl Orientation {
    fn from_out_sets(g: &WeightedGraph, out: &[BTreeSet<NodeId>]) -> Self {
        let edges: Vec<_> = g.edges().collect();
        let forward = edges.iter().map(|&(u, v)| out[u].contains(&v)).collect();
        let out_degree = out.iter().map(|s| s.len() as u32).collect();
        Orientation {
            edges,
            forward,
            out_degree,
        }
    }

    /// Orients each edge `(u, v)` according to `forward[k]`.
    pub fn from_directions(g: &WeightedGraph, forward: Vec<bool>) -> Self {
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), forward.len());
        let mut out_degree = vec![0u32; g.n()];
        for (&(u, v), &f) in edges.iter().zip(&forward) {
            out_degree[if f { u } else { v }] += 1;
        }
        Orientation {
            edges,
            forward,
            out_degree,
        }
    }

    pub fn out_degree(&self, v: NodeId) -> u32 {
        self.out_degree[v]
    }

    pub fn out_degrees(&self) -> &[u32] {
        &self.out_degree
    }

    pub fn max_out_degree(&self) -> u32 {
        self.out_degree.iter().copied().max().unwrap_or(0)
    }

    /// Directed edges `(tail, head)`.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
    }

    /// Every edge of `g` is covered exactly once and the stored out-degrees
    /// match the direction bits.
    pub fn is_consistent_with(&self, g: &WeightedGraph) -> bool {
        if self.edges.len() != g.m() || self.out_degree.len() != g.n() {
            return false;
        }
        if !self.edges.iter().copied().eq(g.edges()) {
            return false;
        }
        let mut counted = vec![0u32; g.n()];
        for (tail, _) in self.arcs() {
            counted[tail] += 1;
        }
        counted == self.out_degree
    }
}

/// Certificate that no orientation with out-degree at most `k` exists: the
/// induced subgraph on `nodes` has more than `k * nodes.len()` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSubgraph {
    pub k: u32,
    pub nodes: Vec<NodeId>,
    pub edges: usize,
}

/// Finds an orientation with maximum out-degree at most `k`, or a dense
/// subgraph proving none exists.
///
/// Starts from the low-to-high orientation and repeatedly reverses a
/// directed path from an overloaded node (out-degree > `k`) to a node with
/// out-degree < `k`. Search is breadth-first in node-id order. When no such
/// path exists, the nodes reachable from the overloaded node span more than
/// `k` edges per node.
pub fn exact_orientation(g: &WeightedGraph, k: u32) -> Result<Orientation, DenseSubgraph> {
    let n = g.n();
    let k = k as usize;
    let mut out: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
    for (u, v) in g.edges() {
        out[u].insert(v);
    }
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut cursor = 0;
    loop {
        while cursor < n && out[cursor].len() <= k {
            cursor += 1;
        }
        if cursor == n {
            return Ok(Orientation::from_out_sets(g, &out));
        }
        let source = cursor;
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[source] = source;
        queue.clear();
        queue.push_back(source);
        let mut sink = None;
        let mut visited = vec![source];
        while let Some(u) = queue.pop_front() {
            if u != source && out[u].len() < k {
                sink = Some(u);
                break;
            }
            for &v in &out[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    visited.push(v);
                    queue.push_back(v);
                }
            }
        }
        match sink {
            Some(t) => {
                let mut v = t;
                while v != source {
                    let u = parent[v];
                    out[u].remove(&v);
                    out[v].insert(u);
                    v = u;
                }
            }
            None => {
                visited.sort_unstable();
                let edges = visited.iter().map(|&u| out[u].len()).sum();
                return Err(DenseSubgraph {
                    k: k as u32,
                    nodes: visited,
                    edges,
                });
            }
        }
        // reversals only ever lower nodes below the cursor to <= k
    }
}

/// Smallest `k` for which [`exact_orientation`] succeeds (the
/// pseudoarboricity).
pub fn min_orientation_bound(g: &WeightedGraph) -> u32 {
    (0..).find(|&k| exact_orientation(g, k).is_ok()).unwrap()
}

/// Maximum residual degree seen while repeatedly deleting a minimum-degree
/// node (ties broken by id).
pub fn degeneracy(g: &WeightedGraph) -> u32 {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, NodeId)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    while let Some((d, v)) = queue.pop_first() {
        best = best.max(d);
        removed[v] = true;
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }
    best as u32
}
