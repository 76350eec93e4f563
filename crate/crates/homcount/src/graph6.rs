//! graph6 text format, bit-exact: 6-bit chunks offset by 63, upper triangle
//! column-major, N(n) size header.

use crate::error::{HomError, Result};
use crate::graph::Graph;

fn push_sextets(out: &mut String, value: u64, count: usize) {
    for k in (0..count).rev() {
        let chunk = (value >> (6 * k)) & 0x3f;
        out.push((chunk as u8 + 63) as char);
    }
}

/// Encodes a graph as a graph6 string.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push_sextets(&mut out, n as u64, 3);
    } else {
        out.push('~');
        out.push('~');
        push_sextets(&mut out, n as u64, 6);
    }
    let mut acc: u8 = 0;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            used += 1;
            if used == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        acc <<= 6 - used;
        out.push((acc + 63) as char);
    }
    out
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64> {
    let b = *bytes.get(offset).ok_or(HomError::Graph6 {
        offset,
        msg: "unexpected end of input".into(),
    })?;
    if !(63..=126).contains(&b) {
        return Err(HomError::Graph6 {
            offset,
            msg: format!("byte {b} outside graph6 range 63..=126"),
        });
    }
    Ok((b - 63) as u64)
}

/// Decodes a graph6 string. Errors carry the offending byte offset.
pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(HomError::Graph6 {
            offset: 0,
            msg: "empty input".into(),
        });
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            let mut v = 0u64;
            for k in 0..6 {
                v = (v << 6) | sextet(bytes, 2 + k)?;
            }
            (v as usize, 8)
        } else {
            let mut v = 0u64;
            for k in 0..3 {
                v = (v << 6) | sextet(bytes, 1 + k)?;
            }
            (v as usize, 4)
        }
    } else {
        (sextet(bytes, 0)? as usize, 1)
    };
    if n == 0 {
        return Err(HomError::Graph6 {
            offset: 0,
            msg: "graph must have at least one vertex".into(),
        });
    }
    let pair_bits = n * (n - 1) / 2;
    let body_bytes = pair_bits.div_ceil(6);
    if bytes.len() != pos + body_bytes {
        return Err(HomError::Graph6 {
            offset: bytes.len().min(pos + body_bytes),
            msg: format!(
                "expected {} body bytes for n={}, found {}",
                body_bytes,
                n,
                bytes.len() - pos.min(bytes.len())
            ),
        });
    }
    let mut edges = Vec::new();
    let mut acc = 0u64;
    let mut avail = 0usize;
    let mut bit_index = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            if avail == 0 {
                acc = sextet(bytes, pos)?;
                pos += 1;
                avail = 6;
            }
            if acc >> (avail - 1) & 1 == 1 {
                edges.push((i, j));
            }
            avail -= 1;
            bit_index += 1;
            if bit_index == pair_bits {
                break 'outer;
            }
        }
    }
    // padding bits must be zero
    if avail > 0 && acc & ((1 << avail) - 1) != 0 {
        return Err(HomError::Graph6 {
            offset: pos - 1,
            msg: "nonzero padding bits".into(),
        });
    }
    Graph::from_edges(n, &edges)
}
