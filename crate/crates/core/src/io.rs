//! Plain-text graph and weight files.
//!
//! Graph file: a header line `n m`, then `m` lines `u v` with 0-indexed
//! endpoints. Weight file: one weight per line, line `i` for vertex `i`,
//! each either a decimal or `p/q`. Writers emit the canonical form, so
//! `write(parse(write(x))) == write(x)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, parse_rational, Weight};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with their 1-based numbers, blank lines skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("{what}: expected a non-negative integer, got {field:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(hline, fields[0], "vertex count")?;
    let m = parse_usize(hline, fields[1], "edge count")?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "edge line must be `u v`"));
        }
        let u = parse_usize(line, fields[0], "endpoint")?;
        let v = parse_usize(line, fields[1], "endpoint")?;
        g.add_edge(u, v).map_err(|e| parse_err(line, e.to_string()))?;
        count += 1;
        if count > m {
            return Err(parse_err(line, format!("more than the {m} edges declared")));
        }
    }
    if count != m {
        return Err(parse_err(hline, format!("declared {m} edges, found {count}")));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a weight file. Positivity is checked later by `WeightedGraph::new`.
pub fn parse_weights(text: &str) -> Result<Vec<Weight>> {
    content_lines(text)
        .map(|(line, body)| parse_rational(body).map_err(|e| parse_err(line, e.to_string())))
        .collect()
}

pub fn write_weights(weights: &[Weight]) -> String {
    let mut out = String::new();
    for w in weights {
        out.push_str(&format_rational(w));
        out.push('\n');
    }
    out
}
