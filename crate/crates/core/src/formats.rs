//! Text formats for graphs: a plain edge list and graph6.
//!
//! Edge list: first non-comment line `n m`, then `m` lines `u v` with
//! 0-indexed endpoints. `#` starts a comment that runs to end of line.

use crate::error::FormatError;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let err = |line: usize, msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let nums = parse_pair(header).ok_or_else(|| err(hline, "expected `n m`"))?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = parse_pair(l).ok_or_else(|| err(line, "expected `u v`"))?;
        if u >= n || v >= n {
            return Err(err(line, &format!("endpoint out of range for n = {n}")));
        }
        if u == v {
            return Err(err(line, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(hline, &format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.edge_count() != m {
        return Err(err(hline, "duplicate edges"));
    }
    Ok(g)
}

fn parse_pair(l: &str) -> Option<(usize, usize)> {
    let mut it = l.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Encodes `g` as a single graph6 line (no trailing newline, no header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 output is printable ASCII")
}

/// Decodes one graph6 line, with or without the `>>graph6<<` header.
pub fn from_graph6(line: &str) -> Result<Graph, FormatError> {
    let bad = |m: &str| FormatError::Graph6(m.to_string());
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the printable graph6 range"));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated vertex count"));
            }
            (rest[..6].iter().fold(0, |acc, &b| acc << 6 | six(b)), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated vertex count"));
            }
            (rest[..3].iter().fold(0, |acc, &b| acc << 6 | six(b)), &rest[3..])
        }
        [b, rest @ ..] => (six(*b), rest),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let need = total_bits.div_ceil(6);
    if body.len() != need {
        return Err(bad(&format!("expected {need} data bytes for n = {n}, found {}", body.len())));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if total_bits % 6 != 0 && six(body[need - 1]) & ((1 << (6 - total_bits % 6)) - 1) != 0 {
        return Err(bad("nonzero padding bits"));
    }
    Ok(g)
}

/// Reads a stream of graph6 lines, skipping blank lines.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, FormatError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(from_graph6).collect()
}
