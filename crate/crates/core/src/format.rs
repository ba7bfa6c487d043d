//! Text interchange: graph6 and a DIMACS-like edge list.
//!
//! graph6 follows the standard layout: a size header, then the upper
//! triangle of the adjacency matrix read column by column (`(0,1)`, `(0,2)`,
//! `(1,2)`, `(0,3)`, ...), packed big-endian into 6-bit groups each offset
//! by 63.

use crate::graph::{Graph, GraphError};

const GRAPH6_MAX: usize = 258_047;

fn g6_err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    debug_assert!(n <= GRAPH6_MAX);
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | row.contains(i) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 string. A leading `>>graph6<<` marker and a trailing
/// newline are accepted.
pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + i, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, header) = match body {
        [] => return Err(g6_err(base, "missing size header")),
        [126, 126, ..] => return Err(g6_err(base, "graphs above 258047 vertices are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(base + body.len(), "truncated size header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n <= 62 {
                return Err(g6_err(base, format!("long size header used for small order {n}")));
            }
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[header..];
    if data.len() != need {
        return Err(g6_err(
            base + header + data.len().min(need),
            format!("expected {need} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = data[need - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(base + header + need - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| g6_err(base, e.to_string()))
}

/// Parses a newline-separated multi-graph graph6 file, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, GraphError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for line in text.split_inclusive('\n') {
        let body = line.trim_end_matches(['\n', '\r']);
        if !body.trim().is_empty() {
            out.push(from_graph6(body).map_err(|e| match e {
                GraphError::Graph6 { offset: o, reason } => GraphError::Graph6 {
                    offset: offset + o,
                    reason,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}

/// Writes `g` as `p <n> <m>` followed by one `e u v` line per edge.
/// Vertices are 1-based, as in DIMACS.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

/// Parses the edge-list format. `c` lines are comments; the header may be
/// either `p <n> <m>` or DIMACS `p edge <n> <m>`.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, reason: &str| GraphError::EdgeList {
        line,
        reason: reason.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut parts = raw.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate header"));
                }
                let rest: Vec<&str> = parts.collect();
                let nums = match rest.as_slice() {
                    [n, m] | [_, n, m] => (n.parse::<usize>(), m.parse::<usize>()),
                    _ => return Err(err(line_no, "header must be `p <n> <m>`")),
                };
                match nums {
                    (Ok(n), Ok(m)) => header = Some((n, m)),
                    _ => return Err(err(line_no, "non-numeric header field")),
                }
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(err(line_no, "edge before header"));
                };
                let ends: Vec<usize> = parts
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(line_no, "non-numeric endpoint"))?;
                let [u, v] = ends.as_slice() else {
                    return Err(err(line_no, "edge line must be `e <u> <v>`"));
                };
                if *u == 0 || *v == 0 || *u > n || *v > n {
                    return Err(err(line_no, "endpoint outside 1..=n"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(err(line_no, "unknown line type")),
        }
    }
    let Some((n, _)) = header else {
        return Err(err(0, "missing header"));
    };
    Graph::from_edges(n, &edges).map_err(|e| err(0, &e.to_string()))
}

/// Parses either format, sniffing on the first non-comment character.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && *l != "c" && !l.starts_with("c "));
    match first {
        Some(l) if l.starts_with("p ") => from_edge_list(text),
        _ => {
            let mut graphs = parse_graph6_lines(text)?;
            match graphs.len() {
                1 => Ok(graphs.remove(0)),
                k => Err(g6_err(0, format!("expected exactly one graph, found {k}"))),
            }
        }
    }
}
