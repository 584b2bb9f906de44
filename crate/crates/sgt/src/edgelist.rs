//! Plain-text edge lists.
//!
//! One edge per line as two 0-based indices separated by whitespace. Blank
//! lines and lines starting with `#` are skipped, except a header of the form
//! `# n=<count>`, which fixes the vertex count.

use std::fmt::Write as _;

use sgt_core::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} exceeds header n = {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
}

fn header(line: &str) -> Option<&str> {
    let rest = line.strip_prefix('#')?.trim();
    let rest = rest.strip_prefix('n')?.trim_start();
    Some(rest.strip_prefix('=')?.trim())
}

/// Parses an edge list. `n_override` wins over any header; otherwise `n` is
/// the header value or `1 + max index`.
pub fn parse_edge_list(text: &str, n_override: Option<usize>) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut header_n = None;
    let mut max_seen: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if let Some(v) = header(trimmed) {
                let n = v.parse().map_err(|_| ParseError::Malformed { line, msg: format!("bad vertex count {v:?}") })?;
                header_n = Some(n);
            }
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut index = || -> Result<usize, ParseError> {
            let f = fields.next().ok_or_else(|| ParseError::Malformed { line, msg: "expected two vertex indices".into() })?;
            f.parse().map_err(|_| ParseError::Malformed { line, msg: format!("{f:?} is not a vertex index") })
        };
        let (u, v) = (index()?, index()?);
        if fields.next().is_some() {
            return Err(ParseError::Malformed { line, msg: "trailing fields".into() });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let hi = u.max(v);
        if max_seen.is_none_or(|(m, _)| hi > m) {
            max_seen = Some((hi, line));
        }
        edges.push((u, v));
    }
    let n = match n_override.or(header_n) {
        Some(n) => {
            if let Some((vertex, line)) = max_seen.filter(|&(m, _)| m >= n) {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
            n
        }
        None => max_seen.map_or(0, |(m, _)| m + 1),
    };
    Ok(Graph::from_edges(n, &edges).expect("indices validated above"))
}

/// Writes `g` with a `# n=` header so isolated trailing vertices survive.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
