//! graph6 encoding: size header (`n + 63`, or `126` plus three bytes for
//! `n >= 63`), then the upper triangle in column-major order
//! `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte, zero padded.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Decodes any graph6 line with an 18-bit size header into `(n, edges)`.
pub(crate) fn decode_graph6(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(parse_err(0, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(parse_err(i, format!("byte {b:#04x} outside the graph6 range 63..=126")));
        }
    }

    let (n, body_start) = if bytes[0] < 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(bytes.len(), "truncated size header"));
        }
        if bytes[1] == 126 {
            return Err(parse_err(1, "36-bit size headers are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 4)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != need {
        return Err(parse_err(
            body_start + body.len().min(need),
            format!("expected {need} data bytes for n = {n}, found {}", body.len()),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body[need - 1] - BIAS;
        let pad = 6 - pairs % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(parse_err(body_start + need - 1, "nonzero padding bits"));
        }
    }
    Ok((n, edges))
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let (n, edges) = decode_graph6(text)?;
    if n > MAX_VERTICES {
        return Err(parse_err(0, format!("n = {n} exceeds the {MAX_VERTICES}-vertex limit")));
    }
    let mut g = Graph::empty(n);
    for (i, j) in edges {
        g.add_edge(i, j);
    }
    Ok(g)
}

/// Encodes a graph given by its order and an adjacency test.
pub(crate) fn encode_graph6(n: usize, has_edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn to_graph6(g: &Graph) -> String {
    encode_graph6(g.n(), |i, j| g.has_edge(i, j))
}
