//! Edge-list and digraph6 readers and writers.
//!
//! Edge lists hold one `u v` pair per line (an edge `u -> v`), with optional
//! `n=<count>` header, `#` comments and blank lines. Labels are zero-based
//! vertex indices. Without a header the vertex count is one more than the
//! largest label.
//!
//! digraph6 lines start with `&`, followed by the vertex count and the
//! row-major adjacency matrix packed six bits per printable byte.

use std::fmt::Write as _;
use std::path::Path;

use altpath_core::{GraphError, OrientedGraph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edgelist,
    Digraph6,
}

impl Format {
    /// `.d6` and `.dg6` files are digraph6, anything else an edge list.
    pub fn guess(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("d6" | "dg6" | "digraph6") => Format::Digraph6,
            _ => Format::Edgelist,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

pub fn parse_edge_list(text: &str) -> Result<OrientedGraph, FormatError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if declared.is_some() || !edges.is_empty() {
                return Err(parse_err(lineno, "header must come first and only once"));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad vertex count: {e}")))?;
            declared = Some(n);
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(lineno, "expected two vertex labels"));
        };
        let u = a
            .parse::<usize>()
            .map_err(|e| parse_err(lineno, format!("bad label {a:?}: {e}")))?;
        let v = b
            .parse::<usize>()
            .map_err(|e| parse_err(lineno, format!("bad label {b:?}: {e}")))?;
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(OrientedGraph::from_edge_list(&edges, n)?)
}

/// `n=<count>` followed by the edges in lexicographic order.
pub fn write_edge_list(g: &OrientedGraph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn encode_count(n: usize, out: &mut String) {
    if n <= 62 {
        out.push(char::from(n as u8 + 63));
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(char::from(((n >> shift) & 63) as u8 + 63));
        }
    }
}

pub fn write_digraph6(g: &OrientedGraph) -> String {
    let n = g.n();
    let mut out = String::from("&");
    encode_count(n, &mut out);
    let mut bits = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .map(|(u, v)| g.has_edge(u, v))
        .peekable();
    while bits.peek().is_some() {
        let mut byte = 0u8;
        for _ in 0..6 {
            byte = byte << 1 | u8::from(bits.next().unwrap_or(false));
        }
        out.push(char::from(byte + 63));
    }
    out
}

/// Parses a single digraph6 line.
pub fn parse_digraph6_line(line: &str, lineno: usize) -> Result<OrientedGraph, FormatError> {
    let body = line
        .strip_prefix('&')
        .ok_or_else(|| parse_err(lineno, "digraph6 line must start with '&'"))?;
    let bytes = body.as_bytes();
    let mut six = Vec::with_capacity(bytes.len());
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(parse_err(lineno, format!("byte {b} outside the digraph6 range")));
        }
        six.push(b - 63);
    }
    let (n, rest) = match six.first() {
        None => return Err(parse_err(lineno, "missing vertex count")),
        Some(63) => {
            if six.len() < 4 {
                return Err(parse_err(lineno, "truncated vertex count"));
            }
            if six[1] == 63 {
                return Err(parse_err(lineno, "vertex counts above 258047 are not supported"));
            }
            let n = (usize::from(six[1]) << 12) | (usize::from(six[2]) << 6) | usize::from(six[3]);
            (n, &six[4..])
        }
        Some(&n) => (usize::from(n), &six[1..]),
    };
    if n > altpath_core::set::MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n }.into());
    }
    let needed = (n * n).div_ceil(6);
    if rest.len() != needed {
        return Err(parse_err(
            lineno,
            format!("expected {needed} matrix bytes, found {}", rest.len()),
        ));
    }
    let bit = |i: usize| rest[i / 6] >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if bit(u * n + v) {
                edges.push((u, v));
            }
        }
    }
    if (n * n..needed * 6).any(bit) {
        return Err(parse_err(lineno, "nonzero padding bits"));
    }
    Ok(OrientedGraph::from_edge_list(&edges, n)?)
}

/// All graphs in a digraph6 file, one per non-empty line. An optional
/// `>>digraph6<<` header is accepted at the start of the first line.
pub fn parse_digraph6(text: &str) -> Result<Vec<OrientedGraph>, FormatError> {
    let mut graphs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut line = raw.trim_end();
        if i == 0 {
            line = line.strip_prefix(">>digraph6<<").unwrap_or(line);
        }
        if line.is_empty() {
            continue;
        }
        graphs.push(parse_digraph6_line(line, i + 1)?);
    }
    Ok(graphs)
}

/// Reads every graph in `path`: one for an edge list, any number for digraph6.
pub fn read_graphs(path: &Path, format: Format) -> Result<Vec<OrientedGraph>, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    match format {
        Format::Edgelist => Ok(vec![parse_edge_list(&text)?]),
        Format::Digraph6 => parse_digraph6(&text),
    }
}
