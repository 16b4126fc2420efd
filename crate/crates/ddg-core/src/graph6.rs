//! graph6 serialization and the `.cls` partition sidecar format.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! into 6-bit chunks offset by 63. Files carry one graph per LF-terminated
//! line. A `.cls` sidecar holds one line per graph: classes separated by `|`,
//! vertices inside a class separated by spaces.

use crate::graph::{ClassPartition, Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 payload")]
    Empty,
    #[error("unsupported vertex count {0} (this toolkit handles at most {MAX_VERTICES})")]
    TooLarge(u64),
    #[error("invalid byte {byte:#04x} at position {pos}")]
    BadByte { pos: usize, byte: u8 },
    #[error("payload truncated: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data at position {0}")]
    Trailing(usize),
    #[error("class line malformed at line {line}: {reason}")]
    BadClassLine { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn encode(g: &Graph) -> Vec<u8> {
    let v = g.vertex_count();
    let mut out = Vec::new();
    if v <= 62 {
        out.push(63 + v as u8);
    } else {
        // 63 <= v <= 64 here, still the 3-chunk header form
        out.push(126);
        out.push(63 + ((v >> 12) & 63) as u8);
        out.push(63 + ((v >> 6) & 63) as u8);
        out.push(63 + (v & 63) as u8);
    }
    let mut chunk = 0u8;
    let mut filled = 0u8;
    for col in 1..v {
        for row in 0..col {
            chunk = (chunk << 1) | g.has_edge(row, col) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (chunk << (6 - filled)));
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let (v, mut pos) = decode_header(bytes)?;
    if v == 0 || v as usize > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(v));
    }
    let v = v as usize;
    let nbits = v * (v - 1) / 2;
    let nbytes = (nbits + 5) / 6;
    if bytes.len() < pos + nbytes {
        return Err(Graph6Error::Truncated { expected: pos + nbytes, got: bytes.len() });
    }
    if bytes.len() > pos + nbytes {
        return Err(Graph6Error::Trailing(pos + nbytes));
    }
    let mut g = Graph::empty(v);
    let mut bit = 0usize;
    'outer: for col in 1..v {
        for row in 0..col {
            let byte = bytes[pos + bit / 6];
            if !(63..127).contains(&byte) {
                return Err(Graph6Error::BadByte { pos: pos + bit / 6, byte });
            }
            if (byte - 63) >> (5 - bit % 6) & 1 != 0 {
                g.add_edge(row, col);
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    // padding bits must be zero
    let last = bytes[bytes.len() - 1];
    if !(63..127).contains(&last) {
        return Err(Graph6Error::BadByte { pos: bytes.len() - 1, byte: last });
    }
    let pad = nbytes * 6 - nbits;
    if pad > 0 && (last - 63) & ((1 << pad) - 1) != 0 {
        return Err(Graph6Error::BadByte { pos: bytes.len() - 1, byte: last });
    }
    pos += nbytes;
    let _ = pos;
    Ok(g)
}

fn decode_header(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    match bytes.first() {
        None => Err(Graph6Error::Empty),
        Some(&b) if (63..126).contains(&b) => Ok(((b - 63) as u64, 1)),
        Some(&126) => {
            if bytes.len() >= 2 && bytes[1] == 126 {
                // 8-chunk form: v > 258047, always out of range here
                if bytes.len() < 8 {
                    return Err(Graph6Error::Truncated { expected: 8, got: bytes.len() });
                }
                let mut v: u64 = 0;
                for (i, &b) in bytes[2..8].iter().enumerate() {
                    if !(63..127).contains(&b) {
                        return Err(Graph6Error::BadByte { pos: 2 + i, byte: b });
                    }
                    v = v << 6 | (b - 63) as u64;
                }
                Ok((v, 8))
            } else {
                if bytes.len() < 4 {
                    return Err(Graph6Error::Truncated { expected: 4, got: bytes.len() });
                }
                let mut v: u64 = 0;
                for (i, &b) in bytes[1..4].iter().enumerate() {
                    if !(63..127).contains(&b) {
                        return Err(Graph6Error::BadByte { pos: 1 + i, byte: b });
                    }
                    v = v << 6 | (b - 63) as u64;
                }
                Ok((v, 4))
            }
        }
        Some(&b) => Err(Graph6Error::BadByte { pos: 0, byte: b }),
    }
}

/// Parses a whole `.g6` file: one graph per line, blank lines ignored.
pub fn decode_file(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        out.push(decode(line.as_bytes()).map_err(|e| (lineno + 1, e))?);
    }
    Ok(out)
}

pub fn encode_file(graphs: &[Graph]) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(std::str::from_utf8(&encode(g)).unwrap());
        s.push('\n');
    }
    s
}

/// Renders one `.cls` line: `0 1|2 3|...`.
pub fn encode_classes(p: &ClassPartition) -> String {
    p.classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("|")
}

pub fn decode_classes(line: &str, lineno: usize) -> Result<ClassPartition, Graph6Error> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for chunk in line.trim().split('|') {
        let class: Result<Vec<usize>, _> = chunk.split_whitespace().map(str::parse).collect();
        classes.push(class.map_err(|e| Graph6Error::BadClassLine {
            line: lineno,
            reason: e.to_string(),
        })?);
    }
    let v: usize = classes.iter().map(Vec::len).sum();
    ClassPartition::from_classes(v, &classes).map_err(|e| Graph6Error::BadClassLine {
        line: lineno,
        reason: e.to_string(),
    })
}

pub fn decode_classes_file(text: &str) -> Result<Vec<ClassPartition>, Graph6Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_classes(l, i + 1))
        .collect()
}

pub fn encode_classes_file(parts: &[ClassPartition]) -> String {
    let mut s = String::new();
    for p in parts {
        s.push_str(&encode_classes(p));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_a_underscore() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(encode(&g), b"A_".to_vec());
        assert_eq!(decode(b"A_").unwrap(), g);
    }

    #[test]
    fn c5_payload_length() {
        // ceil((5*4/2)/6) chunks plus the one-byte header
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let enc = encode(&g);
        assert_eq!(enc.len(), 1 + (10 + 5) / 6);
        assert_eq!(decode(&enc).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_carry_positions() {
        assert_eq!(decode(b""), Err(Graph6Error::Empty));
        assert!(matches!(decode(b"D"), Err(Graph6Error::Truncated { .. })));
        assert!(matches!(
            decode(&[68, 12, 63]),
            Err(Graph6Error::BadByte { pos: 1, byte: 12 })
        ));
        // nonzero padding bits
        assert!(matches!(decode(b"A`"), Err(Graph6Error::BadByte { pos: 1, .. })));
    }

    #[test]
    fn class_lines_roundtrip() {
        let p = ClassPartition::from_classes(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let line = encode_classes(&p);
        assert_eq!(line, "0 3|1 4|2 5");
        assert_eq!(decode_classes(&line, 1).unwrap(), p);
        assert!(decode_classes("0 1|1 2", 3).is_err());
    }
}
