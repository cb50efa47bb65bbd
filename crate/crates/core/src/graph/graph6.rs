//! graph6 encoding: a size field N(n) followed by the upper triangle of the
//! adjacency matrix in column order, packed six bits per byte (offset 63).

use super::{Graph, GraphError, MAX_ORDER};

const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed size field")]
    BadLength,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 data truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after graph6 data")]
    TrailingGarbage(usize),
    #[error("nonzero padding bits in the final byte")]
    NonzeroPadding,
    #[error("graph of order {0} is too large")]
    TooLarge(usize),
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string. The `>>graph6<<` header is optional; no
/// trailing newline is accepted.
pub fn decode_graph6(s: &[u8]) -> Result<Graph, GraphError> {
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    if s.is_empty() {
        return Err(Graph6Error::Empty.into());
    }
    for (offset, &byte) in s.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { offset, byte }.into());
        }
    }
    let (n, body) = if s[0] != 126 {
        ((s[0] - 63) as usize, &s[1..])
    } else if s.len() >= 2 && s[1] == 126 {
        if s.len() < 8 {
            return Err(Graph6Error::BadLength.into());
        }
        let n = s[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 258047 {
            return Err(Graph6Error::BadLength.into());
        }
        (n, &s[8..])
    } else {
        if s.len() < 4 {
            return Err(Graph6Error::BadLength.into());
        }
        let n = s[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(Graph6Error::BadLength.into());
        }
        (n, &s[4..])
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n).into());
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() }.into());
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected).into());
    }
    if nbits % 6 != 0 {
        let pad = 6 - nbits % 6;
        if (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding.into());
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}
