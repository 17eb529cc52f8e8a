//! Hub-and-subdivision transform used by the dominating-set lower bound.
//!
//! From a base graph `G` with `n` nodes, `m` edges and maximum degree `Δ`,
//! build `H`: take `Δ²` copies of `G`, subdivide every edge of every copy
//! with a middle node, and add one hub node per original node, joined to
//! every copy of that node.

use std::fmt::{self, Write as _};

use super::{GraphError, NodeId, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeRole {
    /// Copy `copy` of base node `original`.
    Copy { copy: usize, original: NodeId },
    /// Middle node subdividing base edge `edge` (`u < v`) in copy `copy`.
    Middle { copy: usize, edge: (NodeId, NodeId) },
    /// Hub node joined to every copy of `original`.
    Hub { original: NodeId },
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NodeRole::Copy { copy, original } => write!(f, "copy {copy}:{original}"),
            NodeRole::Middle { copy, edge: (u, v) } => write!(f, "middle {copy}:{u}-{v}"),
            NodeRole::Hub { original } => write!(f, "t {original}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundGraph {
    pub graph: WeightedGraph,
    pub base_n: usize,
    pub base_m: usize,
    pub base_delta: usize,
    pub base_edges: Vec<(NodeId, NodeId)>,
    pub node_roles: Vec<NodeRole>,
}

impl LowerBoundGraph {
    /// Number of copies, `Δ²`.
    pub fn copies(&self) -> usize {
        self.base_delta * self.base_delta
    }

    fn block(&self) -> usize {
        self.base_n + self.base_m
    }

    pub fn copy_node(&self, copy: usize, original: NodeId) -> NodeId {
        copy * self.block() + original
    }

    pub fn middle_node(&self, copy: usize, edge_index: usize) -> NodeId {
        copy * self.block() + self.base_n + edge_index
    }

    pub fn hub_node(&self, original: NodeId) -> NodeId {
        self.copies() * self.block() + original
    }

    pub fn role(&self, v: NodeId) -> NodeRole {
        self.node_roles[v]
    }

    /// `Δ²(n+m) + n`.
    pub fn expected_nodes(&self) -> usize {
        self.copies() * self.block() + self.base_n
    }

    /// `Δ²(2m+n)`.
    pub fn expected_edges(&self) -> usize {
        self.copies() * (2 * self.base_m + self.base_n)
    }

    /// Role sidecar: one `id role payload` line per node.
    pub fn roles_text(&self) -> String {
        let mut out = String::new();
        for (id, role) in self.node_roles.iter().enumerate() {
            writeln!(out, "{id} {role}").unwrap();
        }
        out
    }
}

pub fn build_lower_bound_graph(g: &WeightedGraph) -> Result<LowerBoundGraph, GraphError> {
    if g.m() == 0 {
        return Err(GraphError::EmptyEdgeSet);
    }
    if !g.is_unit_weighted() {
        return Err(GraphError::NonUnitWeights);
    }
    let (n, m, delta) = (g.n(), g.m(), g.max_degree());
    let copies = delta * delta;
    let block = n + m;
    let total = copies * block + n;
    let base_edges: Vec<_> = g.edges().collect();

    let mut roles = Vec::with_capacity(total);
    let mut edges = Vec::with_capacity(copies * (2 * m + n));
    for i in 0..copies {
        let offset = i * block;
        roles.extend((0..n).map(|v| NodeRole::Copy {
            copy: i,
            original: v,
        }));
        for (e, &(u, v)) in base_edges.iter().enumerate() {
            roles.push(NodeRole::Middle {
                copy: i,
                edge: (u, v),
            });
            let mid = offset + n + e;
            edges.push((offset + u, mid));
            edges.push((offset + v, mid));
        }
    }
    let hubs = copies * block;
    for v in 0..n {
        roles.push(NodeRole::Hub { original: v });
        for i in 0..copies {
            edges.push((i * block + v, hubs + v));
        }
    }
    // H has many more nodes than G, so the weight bound only loosens
    let graph = WeightedGraph::with_exponent(vec![1; total], &edges, g.weight_exponent())?
        .with_declared_alpha(2);
    Ok(LowerBoundGraph {
        graph,
        base_n: n,
        base_m: m,
        base_delta: delta,
        base_edges,
        node_roles: roles,
    })
}

fn bad(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_pair(line: usize, s: &str, sep: char) -> Result<(usize, usize), GraphError> {
    let (a, b) = s
        .split_once(sep)
        .ok_or_else(|| bad(line, format!("expected `a{sep}b`, found `{s}`")))?;
    let a = a
        .parse()
        .map_err(|_| bad(line, format!("bad integer `{a}`")))?;
    let b = b
        .parse()
        .map_err(|_| bad(line, format!("bad integer `{b}`")))?;
    Ok((a, b))
}

/// Parses a role sidecar written by [`LowerBoundGraph::roles_text`]. Ids
/// must be listed densely in order.
pub fn parse_roles(text: &str) -> Result<Vec<NodeRole>, GraphError> {
    let mut roles = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [id, kind, payload] = parts[..] else {
            return Err(bad(line_no, "expected `id role payload`"));
        };
        let id: usize = id.parse().map_err(|_| bad(line_no, "bad node id"))?;
        if id != roles.len() {
            return Err(bad(
                line_no,
                format!("expected id {}, found {id}", roles.len()),
            ));
        }
        let role = match kind {
            "copy" => {
                let (copy, original) = parse_pair(line_no, payload, ':')?;
                NodeRole::Copy { copy, original }
            }
            "middle" => {
                let (copy, rest) = payload
                    .split_once(':')
                    .ok_or_else(|| bad(line_no, "expected `copy:u-v`"))?;
                let copy = copy.parse().map_err(|_| bad(line_no, "bad copy index"))?;
                let edge = parse_pair(line_no, rest, '-')?;
                NodeRole::Middle { copy, edge }
            }
            "t" => NodeRole::Hub {
                original: payload.parse().map_err(|_| bad(line_no, "bad node id"))?,
            },
            other => return Err(bad(line_no, format!("unknown role `{other}`"))),
        };
        roles.push(role);
    }
    Ok(roles)
}
