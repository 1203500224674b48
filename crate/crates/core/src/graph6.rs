//! graph6 encoding: the upper triangle of the adjacency matrix in column
//! order, packed six bits per printable byte (offset 63).

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_N: usize = 258_047; // largest order of the 4-byte size form

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "graph6 order",
            limit: MAX_N,
            actual: n,
        });
    }
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        bytes.push(((n >> 12) & 0x3f) as u8 + 63);
        bytes.push(((n >> 6) & 0x3f) as u8 + 63);
        bytes.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

pub fn decode(text: &str) -> Result<Graph> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty graph6 input".into(),
        })?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();

    let sextet = |idx: usize| -> Result<usize> {
        let b = *bytes.get(idx).ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("graph6 string truncated at offset {idx}"),
        })?;
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                line: 1,
                msg: format!("invalid graph6 byte {b:#x} at offset {idx}"),
            });
        }
        Ok((b - 63) as usize)
    };

    let (n, mut pos) = if sextet(0)? == 63 {
        if bytes.len() > 1 && bytes[1] == 126 {
            return Err(Error::Parse {
                line: 1,
                msg: "graph6 orders above 258047 unsupported".into(),
            });
        }
        ((sextet(1)? << 12) | (sextet(2)? << 6) | sextet(3)?, 4)
    } else {
        (sextet(0)?, 1)
    };

    let mut g = Graph::empty(n);
    let mut acc = 0usize;
    let mut have = 0usize;
    for j in 1..n {
        for i in 0..j {
            if have == 0 {
                acc = sextet(pos)?;
                pos += 1;
                have = 6;
            }
            have -= 1;
            if (acc >> have) & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    // padding bits must be zero and nothing may trail the body
    if have > 0 && acc & ((1 << have) - 1) != 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "nonzero padding bits".into(),
        });
    }
    if pos != bytes.len() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("trailing bytes after graph6 body (offset {pos})"),
        });
    }
    Ok(g)
}
