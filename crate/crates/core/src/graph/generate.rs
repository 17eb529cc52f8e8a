use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GraphError, NodeId, WeightedGraph};

/// Probability (as `KEEP_NUM / KEEP_DEN`) that a tree edge survives when a
/// spanning tree is thinned into a forest.
const KEEP_NUM: u32 = 3;
const KEEP_DEN: u32 = 4;

/// Decodes a uniformly random Prüfer sequence into a labelled tree.
fn prufer_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(NodeId, NodeId)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let seq: Vec<NodeId> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<NodeId>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let Reverse(leaf) = leaves.pop().expect("prufer decoding always has a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Union of `alpha` random forests on `n` nodes with uniform integer
/// weights in `[1, weight_max]`.
///
/// Each forest is a uniform labelled spanning tree (Prüfer decoding) with
/// every edge independently dropped with probability 1/4, which detaches
/// random subtrees. Duplicate edges across forests are merged, so
/// `m <= alpha * (n - 1)` and an orientation with out-degree at most
/// `alpha` always exists. Equal seeds give equal graphs.
pub fn generate_bounded_arboricity(
    n: usize,
    alpha: u32,
    weight_max: u64,
    seed: u64,
) -> Result<WeightedGraph, GraphError> {
    if n == 0 || alpha == 0 || weight_max == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "need n >= 1, alpha >= 1, weight_max >= 1 (got {n}, {alpha}, {weight_max})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for _ in 0..alpha {
        for e in prufer_tree(n, &mut rng) {
            if rng.random_ratio(KEEP_NUM, KEEP_DEN) {
                edges.insert(e);
            }
        }
    }
    let weights = (0..n).map(|_| rng.random_range(1..=weight_max)).collect();
    let edges: Vec<_> = edges.into_iter().collect();
    Ok(WeightedGraph::new(weights, &edges)?.with_declared_alpha(alpha))
}

/// `K_{1,delta}` with centre 0 and unit weights.
pub fn generate_star(delta: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..=delta).map(|leaf| (0, leaf)).collect();
    WeightedGraph::unit(delta + 1, &edges)
        .expect("star is simple")
        .with_declared_alpha(1)
}

/// Uniform random labelled tree with unit weights.
pub fn random_tree(n: usize, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = prufer_tree(n, &mut rng);
    WeightedGraph::unit(n, &edges)
        .expect("tree is simple")
        .with_declared_alpha(1)
}

pub fn path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    WeightedGraph::unit(n, &edges)
        .expect("path is simple")
        .with_declared_alpha(1)
}

/// Cycle on `n >= 3` nodes.
pub fn cycle(n: usize) -> WeightedGraph {
    assert!(n >= 3, "a simple cycle needs at least 3 nodes");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    WeightedGraph::unit(n, &edges)
        .expect("cycle is simple")
        .with_declared_alpha(2)
}

pub fn complete(n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    // arboricity of K_n is ceil(n / 2)
    WeightedGraph::unit(n, &edges)
        .expect("complete graph is simple")
        .with_declared_alpha((n as u32).div_ceil(2).max(1))
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let edges: Vec<_> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    WeightedGraph::unit(10, &edges)
        .expect("petersen is simple")
        .with_declared_alpha(2)
}

/// Erdős–Rényi `G(n, num/den)` with unit weights; no arboricity declared.
pub fn gnp(n: usize, num: u32, den: u32, seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unit(n, &edges).expect("gnp is simple")
}
