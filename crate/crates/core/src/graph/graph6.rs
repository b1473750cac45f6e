//! graph6 text format: an `N(n)` size header followed by the upper triangle of
//! the adjacency matrix, column by column, six bits per printable byte offset
//! by 63.

use thiserror::Error;

use super::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: expected {expected} bytes in total, found {found}")]
    BadLength { offset: usize, expected: usize, found: usize },
    #[error("byte {offset}: non-zero padding bits")]
    BadPadding { offset: usize },
    #[error("byte {offset}: {source}")]
    Graph { offset: usize, source: GraphError },
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<Graph6Error> },
}

const HEADER: &str = ">>graph6<<";

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(4 + (n * n) / 12);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
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

pub fn graph6_decode(s: &str) -> Result<Graph, Graph6Error> {
    let trimmed = s.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if body.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset: base + i, byte: b });
        }
    }
    let (n, header_len) = if body[0] < 126 {
        ((body[0] - 63) as usize, 1)
    } else {
        if body.len() < 4 {
            return Err(Graph6Error::BadLength { offset: base + body.len(), expected: 4, found: body.len() });
        }
        if body[1] == 126 {
            // 8-byte header for n >= 258048: far beyond what we hold
            return Err(Graph6Error::Graph {
                offset: base + 1,
                source: GraphError::TooLarge(258048),
            });
        }
        let n = body[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::Graph { offset: base, source: GraphError::TooLarge(n) });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = header_len + bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            offset: base + body.len().min(expected),
            expected,
            found: body.len(),
        });
    }
    let mut g = Graph::empty(n).map_err(|source| Graph6Error::Graph { offset: base, source })?;
    let data = &body[header_len..];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[data.len() - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::BadPadding { offset: base + expected - 1 });
        }
    }
    Ok(g)
}

/// Parses newline-delimited graph6, skipping blank lines.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            graph6_decode(l.trim())
                .map_err(|e| Graph6Error::Line { line: i + 1, source: Box::new(e) })
        })
        .collect()
}

/// Graphs serialise as their graph6 string.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&graph6_encode(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <std::borrow::Cow<'de, str>>::deserialize(d)?;
        graph6_decode(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_is_bw() {
        // bits 111 padded to 111000 = 56; 56 + 63 = 'w'
        assert_eq!(graph6_encode(&Graph::complete(3)), "Bw");
        assert_eq!(graph6_decode("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn known_strings() {
        // reference strings produced by nauty's geng/showg conventions
        assert_eq!(graph6_encode(&Graph::cycle(4)), "Cl");
        assert_eq!(graph6_encode(&Graph::complete(4)), "C~");
        assert_eq!(graph6_encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(graph6_encode(&Graph::empty(1).unwrap()), "@");
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(graph6_encode(&g), "DQc");
    }

    #[test]
    fn round_trip_k23_and_large() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(graph6_decode(&graph6_encode(&k23)).unwrap(), k23);
        let big = Graph::cycle(100);
        let s = graph6_encode(&big);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(graph6_decode(&s).unwrap(), big);
        assert_eq!(graph6_decode(&format!(">>graph6<<{s}\n")).unwrap(), big);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(graph6_decode(""), Err(Graph6Error::Empty));
        assert_eq!(graph6_decode("B w"), Err(Graph6Error::BadByte { offset: 1, byte: b' ' }));
        assert!(matches!(graph6_decode("Bww"), Err(Graph6Error::BadLength { offset: 2, .. })));
        assert!(matches!(graph6_decode("C"), Err(Graph6Error::BadLength { offset: 1, .. })));
        // 'x' = 57 -> low padding bit set
        assert_eq!(graph6_decode("Bx"), Err(Graph6Error::BadPadding { offset: 1 }));
        assert!(matches!(
            read_graph6_lines("Bw\n\nQ\n"),
            Err(Graph6Error::Line { line: 3, .. })
        ));
    }
}
