//! Edge-list text format and DOT export.
//!
//! Edge lists: optional `#` comment lines, a header line `n m`, then `m`
//! lines `u v` of 0-based, whitespace-separated ids. Blank lines are
//! ignored.

use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{GraphError, Result};
use crate::vertex_set::VertexSet;

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let field = fields
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        field
            .parse()
            .map_err(|_| parse_err(line, format!("invalid {what} {field:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(parse_err(line, "expected exactly two fields"));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut arcs = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        if arcs.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} arcs")));
        }
        let (u, v) = parse_pair(line, body)?;
        if u >= n || v >= n {
            return Err(GraphError::OutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        arcs.push((u, v));
        last_line = line;
    }
    if arcs.len() < m {
        return Err(parse_err(
            last_line,
            format!("expected {m} arcs, found {}", arcs.len()),
        ));
    }
    Digraph::build(n, arcs)
}

/// Header `n m`, then arcs in lexicographic order, LF-terminated.
pub fn serialize_edge_list(g: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.arc_count());
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// DOT digraph; vertices in `highlight` are drawn filled black.
pub fn to_dot(g: &Digraph, highlight: &VertexSet) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.n() {
        if highlight.contains(v) {
            let _ = writeln!(out, "  {v} [style=filled fillcolor=black fontcolor=white];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
