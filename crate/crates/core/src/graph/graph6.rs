//! The graph6 text encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, six bits per byte, each byte offset by 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Graph6Fault, Result};

const HEADER: &str = ">>graph6<<";

fn fault(offset: usize, fault: Graph6Fault) -> Error {
    Error::Graph6 { offset, fault }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        None => Err(fault(offset, Graph6Fault::Truncated)),
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(fault(offset, Graph6Fault::BadByte(b))),
    }
}

/// Decodes the size header starting at `start`; returns the order and the offset of
/// the first adjacency byte.
fn parse_size(bytes: &[u8], start: usize) -> Result<(u64, usize)> {
    let first = match bytes.get(start) {
        None => return Err(fault(start, Graph6Fault::Empty)),
        Some(&b) => b,
    };
    if first != 126 {
        return Ok((u64::from(sextet(bytes, start)?), start + 1));
    }
    let (width, body, min) = if bytes.get(start + 1) == Some(&126) {
        (6, start + 2, 258_048)
    } else {
        (3, start + 1, 63)
    };
    let mut n = 0u64;
    for i in 0..width {
        n = n << 6 | u64::from(sextet(bytes, body + i)?);
    }
    if n < min {
        return Err(fault(start, Graph6Fault::NonCanonicalSize));
    }
    Ok((n, body + width))
}

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing line break
/// are accepted. Graphs above 64 vertices are validated in full and then rejected
/// with [`Error::TooLarge`].
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let start = if bytes.starts_with(HEADER.as_bytes()) {
        HEADER.len()
    } else {
        0
    };
    let (n, body) = parse_size(bytes, start)?;
    let pairs = u128::from(n) * u128::from(n.saturating_sub(1)) / 2;
    let needed = pairs.div_ceil(6);
    let available = (bytes.len() - body) as u128;
    if available < needed {
        // report the first bad byte if there is one, otherwise the cut-off point
        for (i, &b) in bytes[body..].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(fault(body + i, Graph6Fault::BadByte(b)));
            }
        }
        return Err(fault(bytes.len(), Graph6Fault::Truncated));
    }
    let end = body + needed as usize;
    for offset in body..end {
        sextet(bytes, offset)?;
    }
    if end < bytes.len() {
        return Err(fault(end, Graph6Fault::TrailingData));
    }
    let n = n as usize;
    if n > MAX_ORDER {
        return Err(Error::TooLarge {
            what: "graph6 input",
            order: n,
            limit: MAX_ORDER,
        });
    }
    let mut g = Graph::new(n)?;
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[body + bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.insert_edge(u, v)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` without header or line break.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn k2_by_hand() {
        // 'A' = 65 -> n = 2; '_' = 95 -> 32 = 0b100000, first bit is the edge {0,1}
        assert_eq!(parse_graph6("A_").unwrap(), complete(2).unwrap());
        assert_eq!(emit_graph6(&complete(2).unwrap()), "A_");
        assert_eq!(parse_graph6("A?").unwrap().edge_count(), 0);
    }

    #[test]
    fn known_strings() {
        // petgraph's reference encoding of the graph with edges ac, ae, bd, de
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(emit_graph6(&g), "D?{");
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
        assert_eq!(parse_graph6("@").unwrap().order(), 1);
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), complete(2).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_graph6("D?"),
            Err(Error::Graph6 {
                offset: 2,
                fault: Graph6Fault::Truncated
            })
        );
        assert_eq!(
            parse_graph6("A_x"),
            Err(Error::Graph6 {
                offset: 2,
                fault: Graph6Fault::TrailingData
            })
        );
        assert_eq!(
            parse_graph6("D? {"),
            Err(Error::Graph6 {
                offset: 2,
                fault: Graph6Fault::BadByte(b' ')
            })
        );
        assert_eq!(
            parse_graph6(""),
            Err(Error::Graph6 {
                offset: 0,
                fault: Graph6Fault::Empty
            })
        );
        assert!(matches!(
            parse_graph6("~??E"),
            Err(Error::Graph6 {
                fault: Graph6Fault::NonCanonicalSize,
                ..
            })
        ));
    }

    #[test]
    fn long_form() {
        for n in [62, 63, 64] {
            let g = path(n).unwrap();
            let text = emit_graph6(&g);
            assert_eq!(text.starts_with('~'), n >= 63);
            assert_eq!(parse_graph6(&text).unwrap(), g);
        }
    }

    #[test]
    fn oversized_graphs_parse_then_refuse() {
        // n = 65 in long form, all zero adjacency bits
        let n = 65usize;
        let mut text = String::from("~");
        for shift in [12, 6, 0] {
            text.push(((n >> shift & 63) as u8 + 63) as char);
        }
        text.push_str(&"?".repeat((n * (n - 1) / 2).div_ceil(6)));
        assert!(matches!(
            parse_graph6(&text),
            Err(Error::TooLarge { order: 65, .. })
        ));
        text.pop();
        assert!(matches!(
            parse_graph6(&text),
            Err(Error::Graph6 {
                fault: Graph6Fault::Truncated,
                ..
            })
        ));
    }
}
