//! Text formats: graph6 (interchange) and a plain edge list (hand-editable).

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("graph6: invalid byte {byte:#04x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("graph6: empty input")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses an edge list.
///
/// Lines are trimmed; blank lines and anything after `#` are ignored. Every
/// remaining line holds two non-negative integers. The first such line is a
/// header `n m` iff every later endpoint is `< n` and the later lines name
/// exactly `m` distinct edges; otherwise it is an ordinary edge. Without a
/// header the vertex count is one more than the largest index. Duplicate
/// edges collapse; self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut rows: Vec<(usize, usize, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut field = |name: &str| -> Result<usize, FormatError> {
            let tok = it.next().ok_or_else(|| FormatError::EdgeList {
                line: line_no,
                message: format!("missing {name}"),
            })?;
            tok.parse().map_err(|_| FormatError::EdgeList {
                line: line_no,
                message: format!("expected a non-negative integer, found {tok:?}"),
            })
        };
        let u = field("first vertex")?;
        let v = field("second vertex")?;
        if let Some(extra) = it.next() {
            return Err(FormatError::EdgeList {
                line: line_no,
                message: format!("unexpected trailing token {extra:?}"),
            });
        }
        rows.push((line_no, u, v));
    }

    let header = match rows.first() {
        Some(&(_, n, m)) if is_header(n, m, &rows[1..]) => Some(n),
        _ => None,
    };
    let edges = if header.is_some() { &rows[1..] } else { &rows[..] };
    let n = match header {
        Some(n) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }
    let mut b = GraphBuilder::new(n);
    for &(line, u, v) in edges {
        if u == v {
            return Err(FormatError::SelfLoop { line, vertex: u });
        }
        b.add_edge(u, v).map_err(|e| FormatError::EdgeList { line, message: e.to_string() })?;
    }
    Ok(b.build())
}

fn is_header(n: usize, m: usize, rest: &[(usize, usize, usize)]) -> bool {
    if rest.iter().any(|&(_, u, v)| u >= n || v >= n) {
        return false;
    }
    let mut distinct: Vec<(usize, usize)> = rest
        .iter()
        .filter(|&&(_, u, v)| u != v)
        .map(|&(_, u, v)| (u.min(v), u.max(v)))
        .collect();
    distinct.sort_unstable();
    distinct.dedup();
    // a self-loop line still disqualifies nothing here; it is rejected later
    distinct.len() == m
}

/// Writes `n m` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

const G6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line. An optional `>>graph6<<` prefix and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim();
    let (base, body) = match trimmed.strip_prefix(G6_HEADER) {
        Some(rest) => (G6_HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if body.is_empty() {
        return Err(FormatError::Empty);
    }
    for (k, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::InvalidByte { offset: base + k, byte: b });
        }
    }
    let (n, start) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else {
        if body.get(1) == Some(&126) {
            // eight-byte form encodes n >= 2^18
            return Err(GraphError::TooLarge(MAX_VERTICES + 1).into());
        }
        if body.len() < 4 {
            return Err(FormatError::Length { expected: 4, found: body.len() });
        }
        let n = body[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = start + bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Length { expected, found: body.len() });
    }
    let data = &body[start..];
    let mut b = GraphBuilder::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (0b10_0000 >> (k % 6)) != 0 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

/// Encodes a graph in canonical graph6 (no header, no newline).
pub fn to_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}
