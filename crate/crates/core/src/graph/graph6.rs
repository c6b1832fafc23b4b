//! graph6 text encoding (printable ASCII, offset 63).
//!
//! The size header is a single byte `n + 63` for `n <= 62`; the body packs
//! the upper triangle column by column, `x(0,1) x(0,2) x(1,2) x(0,3) ...`,
//! six bits per byte, most significant bit first, zero padded.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn graph6_emit(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(2 + n * n / 12);
    out.push((n as u8 + OFFSET) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + OFFSET) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + OFFSET) as char);
    }
    out
}

pub fn graph6_parse(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let start = if s.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let err = |offset: usize, reason: &str| Error::Parse {
        offset,
        reason: reason.to_string(),
    };
    let Some(&head) = bytes.get(start) else {
        return Err(err(start, "missing size byte"));
    };
    if !(OFFSET..=126).contains(&head) {
        return Err(err(start, "size byte outside the printable range"));
    }
    if head == 126 {
        return Err(err(
            start,
            &format!("multi-byte size header; graphs are limited to {MAX_ORDER} vertices"),
        ));
    }
    let n = (head - OFFSET) as usize;
    if n == 0 {
        return Err(err(start, "graph has no vertices"));
    }
    if n > MAX_ORDER {
        return Err(err(
            start,
            &format!("order {n} exceeds the limit of {MAX_ORDER}"),
        ));
    }
    let body = &bytes[start + 1..];
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        let offset = start + 1 + body.len().min(need);
        return Err(err(
            offset,
            &format!(
                "expected {need} body bytes for order {n}, found {}",
                body.len()
            ),
        ));
    }
    for (k, &b) in body.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(err(start + 1 + k, "byte outside the printable range"));
        }
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - OFFSET;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                g.set_edge(i, j);
            }
            idx += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = body[need - 1] - OFFSET;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(err(start + need, "non-zero padding bits"));
        }
    }
    Ok(g)
}
