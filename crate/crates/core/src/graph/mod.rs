//! Network topologies: immutable weighted simple graphs, instance
//! generators, the hub-and-subdivision lower-bound transform, and
//! orientation utilities.

mod generate;
mod io;
mod lower_bound;
mod orientation;

pub use generate::{
    complete, cycle, generate_bounded_arboricity, generate_star, gnp, path, petersen, random_tree,
};
pub use io::{parse_graph, write_graph};
pub use lower_bound::{build_lower_bound_graph, parse_roles, LowerBoundGraph, NodeRole};
pub use orientation::{
    degeneracy, exact_orientation, min_orientation_bound, DenseSubgraph, Orientation,
};

use thiserror::Error;

pub type NodeId = usize;

/// Default exponent `c` in the weight bound `w_v <= n^c`.
pub const DEFAULT_WEIGHT_EXPONENT: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("parallel edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("node {node} out of range for n = {n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("node {0} has weight 0; weights must be positive")]
    ZeroWeight(NodeId),
    #[error("node {node} has weight {weight} above the bound {bound}")]
    WeightTooLarge {
        node: NodeId,
        weight: u64,
        bound: u64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph must have at least one edge")]
    EmptyEdgeSet,
    #[error("graph must be unit-weighted")]
    NonUnitWeights,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple undirected graph with positive integer node weights.
///
/// Node ids are dense `0..n`. Adjacency lists are sorted and symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<NodeId>>,
    weights: Vec<u64>,
    declared_alpha: Option<u32>,
    weight_exponent: u32,
}

impl WeightedGraph {
    /// Builds a graph from weights and an edge list, rejecting loops,
    /// parallel edges, out-of-range endpoints and out-of-bound weights.
    pub fn new(weights: Vec<u64>, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        Self::with_exponent(weights, edges, DEFAULT_WEIGHT_EXPONENT)
    }

    pub fn with_exponent(
        weights: Vec<u64>,
        edges: &[(NodeId, NodeId)],
        weight_exponent: u32,
    ) -> Result<Self, GraphError> {
        let n = weights.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(GraphError::NodeOutOfRange { node: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let g = WeightedGraph {
            adjacency,
            weights,
            declared_alpha: None,
            weight_exponent,
        };
        g.check_weights()?;
        Ok(g)
    }

    /// Unit-weighted graph on `n` nodes.
    pub fn unit(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        Self::new(vec![1; n], edges)
    }

    fn check_weights(&self) -> Result<(), GraphError> {
        let bound = self.weight_bound();
        for (v, &w) in self.weights.iter().enumerate() {
            if w == 0 {
                return Err(GraphError::ZeroWeight(v));
            }
            if w > bound {
                return Err(GraphError::WeightTooLarge {
                    node: v,
                    weight: w,
                    bound,
                });
            }
        }
        Ok(())
    }

    /// `max(n, 2)^c`, saturating.
    pub fn weight_bound(&self) -> u64 {
        let base = self.n().max(2) as u64;
        base.checked_pow(self.weight_exponent).unwrap_or(u64::MAX)
    }

    /// Attaches an arboricity upper bound. Not verified here; use
    /// [`exact_orientation`] to check it.
    pub fn with_declared_alpha(mut self, alpha: u32) -> Self {
        self.declared_alpha = Some(alpha);
        self
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Result<Self, GraphError> {
        if weights.len() != self.n() {
            return Err(GraphError::WeightCount {
                expected: self.n(),
                got: weights.len(),
            });
        }
        let g = WeightedGraph {
            weights,
            ..self.clone()
        };
        g.check_weights()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn weight(&self, v: NodeId) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn declared_alpha(&self) -> Option<u32> {
        self.declared_alpha
    }

    pub fn weight_exponent(&self) -> u32 {
        self.weight_exponent
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `N^+_v`: the node itself followed by its neighbours.
    pub fn closed_neighborhood(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::once(v).chain(self.adjacency[v].iter().copied())
    }

    pub fn set_weight(&self, nodes: &[NodeId]) -> u64 {
        nodes.iter().map(|&v| self.weights[v]).sum()
    }

    /// Connected components as sorted node lists, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(
            WeightedGraph::unit(3, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            WeightedGraph::unit(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            WeightedGraph::unit(2, &[(0, 2)]),
            Err(GraphError::NodeOutOfRange { node: 2, n: 2 })
        );
        assert_eq!(
            WeightedGraph::new(vec![1, 0], &[]),
            Err(GraphError::ZeroWeight(1))
        );
        assert!(matches!(
            WeightedGraph::new(vec![1, 28], &[(0, 1)]),
            Err(GraphError::WeightTooLarge { node: 1, .. })
        ));
    }

    #[test]
    fn weight_bound_uses_at_least_two() {
        let g = WeightedGraph::new(vec![7], &[]).unwrap();
        assert_eq!(g.weight_bound(), 8);
        let g = WeightedGraph::new(vec![1; 4], &[]).unwrap();
        assert_eq!(g.weight_bound(), 64);
    }

    #[test]
    fn basic_queries() {
        let g = WeightedGraph::new(vec![5, 2, 8], &[(1, 2), (0, 1)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.closed_neighborhood(1).collect::<Vec<_>>(), vec![1, 0, 2]);
        assert_eq!(g.max_degree(), 2);
        assert!(g.is_forest());
        assert!(!g.is_unit_weighted());
        assert_eq!(g.set_weight(&[0, 2]), 13);
    }

    #[test]
    fn components_and_forests() {
        let g = WeightedGraph::unit(6, &[(0, 1), (1, 2), (2, 0), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
        assert!(!g.is_forest());
    }
}
