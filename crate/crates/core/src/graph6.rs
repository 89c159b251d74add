//! graph6 codec, short-form header only (`n <= 62`).
//!
//! Layout: one header byte `63 + n`, then the upper triangle of the adjacency
//! matrix in column-major order `x(0,1), x(0,2), x(1,2), x(0,3), ..`, packed
//! six bits per byte (most significant first), each byte offset by 63, with
//! the last byte zero-padded.

use crate::error::Graph6Error;
use crate::graph::Graph;

/// Largest vertex count expressible with the one-byte header.
pub const MAX_SHORT_FORM: usize = 62;

const BIAS: u8 = 63;

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    decode_bytes(text.as_bytes())
}

pub fn decode_bytes(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if head == 126 {
        return Err(Graph6Error::LongForm);
    }
    if !(BIAS..126).contains(&head) {
        return Err(Graph6Error::BadLengthByte(head));
    }
    let n = (head - BIAS) as usize;
    if let Some((offset, &byte)) = body.iter().enumerate().find(|(_, &b)| !(BIAS..=126).contains(&b)) {
        return Err(Graph6Error::InvalidChar { offset: offset + 1, byte });
    }
    let expected = payload_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData { expected, found: body.len() });
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - BIAS;
            if byte & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let pad_mask = (1u8 << (6 - bit % 6)) - 1;
        if (body[bit / 6] - BIAS) & pad_mask != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_SHORT_FORM {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | ((row >> i) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
