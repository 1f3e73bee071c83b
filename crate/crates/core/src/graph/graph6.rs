use thiserror::Error;

use super::Graph;

/// Largest vertex count accepted by the parser.
pub const MAX_GRAPH6_VERTICES: usize = 1 << 18;

const OPTIONAL_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("malformed graph6 size header")]
    MalformedHeader,
    #[error("truncated graph6 body: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("byte 0x{byte:02x} at offset {offset} is outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("{extra} unexpected trailing bytes")]
    TrailingData { extra: usize },
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
    #[error("graph6 vertex count {0} exceeds the supported maximum")]
    TooLarge(usize),
}

/// Parses one graph6 line (surrounding whitespace and an optional
/// `>>graph6<<` prefix are ignored).
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::OutOfRange { offset, byte });
        }
    }
    let (n, body) = decode_size(bytes)?;
    if n > MAX_GRAPH6_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            extra: body.len() - expected,
        });
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("graph6 bit vector encodes a simple graph"))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let six = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::MalformedHeader);
        }
        let n = six(&bytes[2..8]);
        if n < 258_048 {
            return Err(Graph6Error::MalformedHeader);
        }
        return Ok((n, &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(Graph6Error::MalformedHeader);
    }
    let n = six(&bytes[1..4]);
    if n < 63 {
        return Err(Graph6Error::MalformedHeader);
    }
    Ok((n, &bytes[4..]))
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
}

/// Encodes `g` as a graph6 line without a trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12);
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k4_is_c_tilde() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(to_graph6(&g), "C~");
    }

    #[test]
    fn single_vertex_is_at_sign() {
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn known_encoding_from_petgraph_docs() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(
            parse_graph6("C\x01"),
            Err(Graph6Error::OutOfRange { offset: 1, byte: 1 })
        );
        assert_eq!(parse_graph6("D"), Err(Graph6Error::Truncated { expected: 2, found: 0 }));
        assert_eq!(parse_graph6("C~~"), Err(Graph6Error::TrailingData { extra: 1 }));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::MalformedHeader));
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        // 'D' has 10 bits -> 2 bytes with 2 padding bits; '@' sets the low bit
        assert_eq!(parse_graph6("D?@"), Err(Graph6Error::NonzeroPadding));
    }

    #[test]
    fn long_header_round_trip() {
        let edges: Vec<_> = (1..100).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edges(100, &edges).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        assert_eq!(parse_graph6(&format!(">>graph6<<{s}\n")).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..40, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for j in 1..n {
                for i in 0..j {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 3 == 0 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
            prop_assert_eq!(to_graph6(&parse_graph6(&s).unwrap()), s);
        }
    }
}
