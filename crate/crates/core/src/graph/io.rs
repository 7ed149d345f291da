//! Text formats: a plain edge list and DIMACS `p edge`.
//!
//! Edge list (0-based ids, UTF-8, `#` starts a comment):
//!
//! ```text
//! 0 1        # an edge
//! w 1 5      # vertex 1 has weight 5
//! n 7        # vertex count, only needed for trailing isolated vertices
//! ```
//!
//! DIMACS (1-based ids): `c` comments, a `p edge <n> <m>` header, `e <u> <v>`
//! edges and optional `n <v> <w>` weight lines.

use std::fmt::Write as _;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(Error::Validation(format!("unknown graph format `{other}`"))),
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn num(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| perr(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Graph> {
    let text = std::str::from_utf8(text).map_err(|e| perr(0, format!("input is not UTF-8: {e}")))?;
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn build(n: usize, edges: Vec<(usize, usize, usize)>, weights: Vec<(usize, u64, usize)>) -> Result<Graph> {
    let mut g = Graph::empty(n);
    for (u, v, line) in edges {
        g.add_edge(u, v).map_err(|e| match e {
            Error::Validation(m) => perr(line, m),
            other => other,
        })?;
    }
    if weights.is_empty() {
        return Ok(g);
    }
    let mut w = vec![1u64; n];
    for (v, x, _) in weights {
        if x < 1 {
            return Err(Error::Validation(format!("vertex {v} has weight {x}; weights must be at least 1")));
        }
        w[v] = x;
    }
    g.with_weights(w)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = 0usize;
    let mut max_id: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["w", v, x] => {
                let v = num(v, line)? as usize;
                let x = num(x, line)?;
                max_id = max_id.max(Some(v));
                weights.push((v, x, line));
            }
            ["n", count] => declared = declared.max(num(count, line)? as usize),
            [u, v] => {
                let u = num(u, line)? as usize;
                let v = num(v, line)? as usize;
                if u == v {
                    return Err(perr(line, format!("self-loop on vertex {u}")));
                }
                max_id = max_id.max(Some(u.max(v)));
                edges.push((u, v, line));
            }
            _ => return Err(perr(line, format!("cannot read `{body}`"))),
        }
    }
    let n = declared.max(max_id.map_or(0, |m| m + 1));
    build(n, edges, weights)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let vertex = |tok: &str, n: usize, line: usize| -> Result<usize> {
        let v = num(tok, line)? as usize;
        if v == 0 || v > n {
            return Err(perr(line, format!("vertex {v} outside 1..={n}")));
        }
        Ok(v - 1)
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["p", kind, count, _m] if *kind == "edge" || *kind == "col" => {
                if n.is_some() {
                    return Err(perr(line, "second problem line"));
                }
                n = Some(num(count, line)? as usize);
            }
            ["e", u, v] => {
                let nn = n.ok_or_else(|| perr(line, "edge before the `p edge` header"))?;
                let (u, v) = (vertex(u, nn, line)?, vertex(v, nn, line)?);
                if u == v {
                    return Err(perr(line, format!("self-loop on vertex {}", u + 1)));
                }
                edges.push((u, v, line));
            }
            ["n", v, x] => {
                let nn = n.ok_or_else(|| perr(line, "weight before the `p edge` header"))?;
                weights.push((vertex(v, nn, line)?, num(x, line)?, line));
            }
            _ => return Err(perr(line, format!("cannot read `{body}`"))),
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing `p edge` header"))?;
    build(n, edges, weights)
}

/// Canonical edge-list text: edges sorted lexicographically, then weights.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let covered = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if covered < g.n() && !g.is_weighted() {
        let _ = writeln!(out, "n {}", g.n());
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if g.is_weighted() {
        for v in 0..g.n() {
            let _ = writeln!(out, "w {v} {}", g.weight(v));
        }
    }
    out
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    if g.is_weighted() {
        for v in 0..g.n() {
            let _ = writeln!(out, "n {} {}", v + 1, g.weight(v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn edge_list_p3() {
        let g = parse_graph(b"0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!(g, p3());
    }

    #[test]
    fn dimacs_p3() {
        let g = parse_graph(b"p edge 3 2\ne 1 2\ne 2 3", Format::Dimacs).unwrap();
        assert_eq!(g, p3());
    }

    #[test]
    fn duplicate_edge_stored_once() {
        let g = parse_graph(b"0 1\n0 1", Format::EdgeList).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn comments_and_weights() {
        let g = parse_graph(b"# header\n0 1 # trailing\n\nw 1 5\n", Format::EdgeList).unwrap();
        assert_eq!(g.weights(), Some(&[1, 5][..]));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_graph(b"0 1\n1 x\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_graph(b"0 1\n1 2 3 4\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph(b"p edge 2 1\ne 1 3\n", Format::Dimacs).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph(b"e 1 2\n", Format::Dimacs).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn zero_weight_is_validation_error() {
        let err = parse_graph(b"0 1\nw 0 0\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let err = parse_graph(b"p edge 2 1\ne 1 2\nn 2 0\n", Format::Dimacs).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn trailing_isolated_vertices_survive_serialization() {
        let g = Graph::from_edges(5, [(0, 1)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(parse_graph(text.as_bytes(), Format::EdgeList).unwrap(), g);
        let text = to_dimacs(&g);
        assert_eq!(parse_graph(text.as_bytes(), Format::Dimacs).unwrap(), g);
    }
}
