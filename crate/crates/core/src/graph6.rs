//! graph6 encoding: `N(n)` followed by the upper triangle of the adjacency
//! matrix, column by column, packed six bits per byte with offset 63.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { byte: u8, offset: usize },
    #[error("truncated size header")]
    TruncatedHeader,
    #[error("expected {expected} data bytes for {vertices} vertices, found {found}")]
    WrongLength {
        vertices: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex count {0} exceeds the graph6 maximum")]
    TooLarge(usize),
}

const MAX_VERTICES: usize = 68_719_476_735;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as a graph6 string (no `>>graph6<<` header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(n <= MAX_VERTICES, "graph too large for graph6");
    let mut out = Vec::new();
    encode_size(n, &mut out);
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string. A leading `>>graph6<<` header and trailing
/// whitespace are tolerated.
pub fn from_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim_end();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { byte, offset });
        }
    }
    let value = |b: u8| (b - 63) as usize;
    let (n, data) = if bytes[0] != 126 {
        (value(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedHeader);
        }
        let n = bytes[1..4].iter().fold(0, |acc, &b| (acc << 6) | value(b));
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedHeader);
        }
        let n = bytes[2..8].iter().fold(0, |acc, &b| (acc << 6) | value(b));
        (n, &bytes[8..])
    };
    if n > 1 << 20 {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            vertices: n,
            expected,
            found: data.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = value(data[k / 6]);
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges).expect("graph6 pairs are valid"))
}
