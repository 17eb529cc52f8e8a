//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m c
//! w_0
//! ...
//! w_{n-1}
//! u v        (m lines, u < v)
//! ```
//!
//! A comment `# declared arboricity k` attaches an arboricity bound.

use std::fmt::Write as _;

use super::{GraphError, NodeId, WeightedGraph};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_fields<const K: usize>(line_no: usize, line: &str) -> Result<[u64; K], GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != K {
        return Err(GraphError::Parse {
            line: line_no,
            msg: format!("expected {K} fields, found {}", parts.len()),
        });
    }
    let mut out = [0u64; K];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| GraphError::Parse {
            line: line_no,
            msg: format!("`{part}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or(GraphError::Parse {
        line: 0,
        msg: "missing `n m c` header".into(),
    })?;
    let [n, m, c] = parse_fields::<3>(line_no, header)?;
    let (n, m) = (n as usize, m as usize);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) = lines.next().ok_or(GraphError::WeightCount {
            expected: n,
            got: weights.len(),
        })?;
        let [w] = parse_fields::<1>(line_no, line)?;
        weights.push(w);
    }
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m);
    for k in 0..m {
        let (line_no, line) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: format!("expected {m} edges, found {k}"),
        })?;
        let [u, v] = parse_fields::<2>(line_no, line)?;
        if u >= v {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("edge `{u} {v}` must satisfy u < v"),
            });
        }
        edges.push((u as usize, v as usize));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(GraphError::Parse {
            line: line_no,
            msg: "trailing data after the last edge".into(),
        });
    }
    let c = u32::try_from(c).map_err(|_| GraphError::Parse {
        line: 1,
        msg: "weight exponent too large".into(),
    })?;
    let g = WeightedGraph::with_exponent(weights, &edges, c)?;
    Ok(match declared_alpha(text) {
        Some(alpha) => g.with_declared_alpha(alpha),
        None => g,
    })
}

/// Reads a `# declared arboricity k` comment line, if present.
fn declared_alpha(text: &str) -> Option<u32> {
    text.lines()
        .filter_map(|line| line.trim().strip_prefix('#'))
        .find_map(|c| c.trim().strip_prefix("declared arboricity"))
        .and_then(|v| v.trim().parse().ok())
}

pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    if let Some(alpha) = g.declared_alpha() {
        writeln!(out, "# declared arboricity {alpha}").unwrap();
    }
    writeln!(out, "{} {} {}", g.n(), g.m(), g.weight_exponent()).unwrap();
    for &w in g.weights() {
        writeln!(out, "{w}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::generate_bounded_arboricity;
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# a path\n3 2 3\n5\n2 # middle\n8\n0 1\n1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.weights(), &[5, 2, 8]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("2 1 3\n1\n1\n1 0\n").is_err());
        assert!(parse_graph("2 1 3\n1\n1\n").is_err());
        assert!(parse_graph("2 0 3\n1\n").is_err());
        assert!(parse_graph("1 0 3\n1\n0 0\n").is_err());
        assert!(parse_graph("1 0 3\nx\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = generate_bounded_arboricity(10, 2, 8, 3).unwrap();
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back.weights(), g.weights());
        assert_eq!(
            back.edges().collect::<Vec<_>>(),
            g.edges().collect::<Vec<_>>()
        );
        assert_eq!(back.declared_alpha(), Some(2));
    }
}
