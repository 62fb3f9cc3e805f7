//! Text formats for graphs.
//!
//! * edge list: first line `n m`, then `m` lines `u v` (0-indexed). Blank
//!   lines and lines starting with `#` are ignored.
//! * graph6: the standard nauty format, one graph per line, optional
//!   `>>graph6<<` header.
//! * JSON: `{"n": 4, "edges": [[0, 1], [1, 2]]}`.
//! * polygon: first line `n k`, then `k` chord lines `u v`; the outer cycle
//!   `0, 1, .., n-1` is implied. Used for maximal outerplanar graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("input contains no graph")]
    Empty,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edgelist,
    Graph6,
    Json,
    Polygon,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(Format::Edgelist),
            "graph6" => Ok(Format::Graph6),
            "json" => Ok(Format::Json),
            "polygon" => Ok(Format::Polygon),
            _ => Err(format!("unknown format `{s}` (expected edgelist, graph6, json or polygon)")),
        }
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Guess the format of `text`: JSON if it starts with `{`, edge list if the
/// first content line is two integers, graph6 otherwise.
pub fn detect_format(text: &str) -> Format {
    let Some((_, first)) = content_lines(text).next() else {
        return Format::Edgelist;
    };
    if first.starts_with('{') {
        return Format::Json;
    }
    let mut it = first.split_whitespace();
    let ints = it.next().is_some_and(|a| a.parse::<usize>().is_ok())
        && it.next().is_some_and(|b| b.parse::<usize>().is_ok())
        && it.next().is_none();
    if ints {
        Format::Edgelist
    } else {
        Format::Graph6
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), ParseError> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| syntax(line, "expected two integers"))?;
        tok.parse().map_err(|_| syntax(line, format!("`{tok}` is not a non-negative integer")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(syntax(line, "expected exactly two integers"));
    }
    Ok((a, b))
}

/// Parse `n m` followed by `m` pair lines; returns `n`, the pairs with their
/// line numbers, and whether more content follows.
fn parse_counted_pairs(text: &str) -> Result<(usize, Vec<(usize, (usize, usize))>), ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(ParseError::Empty)?;
    let (n, m) = parse_pair(hl, header)?;
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| syntax(hl, format!("header announces {m} lines, found {}", pairs.len())))?;
        pairs.push((line, parse_pair(line, l)?));
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, format!("unexpected content after the {m} announced lines")));
    }
    Ok((n, pairs))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let (n, pairs) = parse_counted_pairs(text)?;
    build_checked(n, &pairs, &[])
}

/// Validates pairs one at a time so errors point at the offending line.
fn build_checked(n: usize, pairs: &[(usize, (usize, usize))], extra: &[(usize, usize)]) -> Result<Graph, ParseError> {
    if n > crate::graph::DEFAULT_MAX_VERTICES {
        return Err(ParseError::Graph { line: 1, source: GraphError::TooLarge { n, cap: crate::graph::DEFAULT_MAX_VERTICES } });
    }
    let mut seen = std::collections::HashSet::with_capacity(pairs.len() + extra.len());
    for &(u, v) in extra {
        seen.insert((u.min(v), u.max(v)));
    }
    for &(line, (u, v)) in pairs {
        let source = if u >= n || v >= n {
            Some(GraphError::OutOfRange { u, v, n })
        } else if u == v {
            Some(GraphError::SelfLoop { v: u })
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(GraphError::DuplicateEdge { u, v })
        } else {
            None
        };
        if let Some(source) = source {
            return Err(ParseError::Graph { line, source });
        }
    }
    Graph::from_edges(n, extra.iter().copied().chain(pairs.iter().map(|p| p.1)))
        .map_err(|source| ParseError::Graph { line: 1, source })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Maximal outerplanar shorthand: `n k` then `k` chords; the cycle
/// `0..n-1` is added implicitly.
pub fn parse_polygon(text: &str) -> Result<Graph, ParseError> {
    let (n, chords) = parse_counted_pairs(text)?;
    if n < 3 {
        return Err(syntax(1, format!("a polygon needs at least 3 vertices, got {n}")));
    }
    let cycle: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build_checked(n, &chords, &cycle)
}

pub fn write_polygon(n: usize, chords: &[(Vertex, Vertex)]) -> String {
    let mut s = format!("{n} {}\n", chords.len());
    for (u, v) in chords {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let jg: JsonGraph = serde_json::from_str(text).map_err(|e| syntax(e.line(), e.to_string()))?;
    Graph::from_edges(jg.n, jg.edges).map_err(|source| ParseError::Graph { line: 1, source })
}

/// Any number of concatenated JSON graph objects, e.g. one per line.
pub fn parse_json_stream(text: &str) -> Result<Vec<Graph>, ParseError> {
    let mut out = Vec::new();
    let mut stream = serde_json::Deserializer::from_str(text).into_iter::<JsonGraph>();
    while let Some(item) = stream.next() {
        let line = 1 + text[..stream.byte_offset()].matches('\n').count();
        let jg = item.map_err(|e| syntax(e.line(), e.to_string()))?;
        out.push(Graph::from_edges(jg.n, jg.edges).map_err(|source| ParseError::Graph { line, source })?);
    }
    Ok(out)
}

pub fn write_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraph { n: g.n(), edges: g.edges() }).expect("graph serialises")
}

fn g6_byte(line: usize, b: u8) -> Result<u64, ParseError> {
    if (63..=126).contains(&b) {
        Ok(u64::from(b - 63))
    } else {
        Err(syntax(line, format!("byte {b:#04x} outside the graph6 range 63..=126")))
    }
}

/// Decode one graph6 string (no trailing newline required).
pub fn decode_graph6(s: &str) -> Result<Graph, ParseError> {
    decode_graph6_line(1, s)
}

fn decode_graph6_line(line: usize, s: &str) -> Result<Graph, ParseError> {
    let s = s.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(syntax(line, "empty graph6 string"));
    }
    let (n, body) = if bytes[0] != 126 {
        (g6_byte(line, bytes[0])? as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(syntax(line, "truncated graph6 size field"));
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = n << 6 | g6_byte(line, b)?;
        }
        (n as usize, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(syntax(line, "truncated graph6 size field"));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = n << 6 | g6_byte(line, b)?;
        }
        (n as usize, &bytes[8..])
    };
    if n > crate::graph::DEFAULT_MAX_VERTICES {
        return Err(ParseError::Graph { line, source: GraphError::TooLarge { n, cap: crate::graph::DEFAULT_MAX_VERTICES } });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(syntax(line, format!("graph6 body has {} bytes, expected {need} for n={n}", body.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = g6_byte(line, body[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).map_err(|source| ParseError::Graph { line, source })
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decode every graph6 line of `text`.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, ParseError> {
    content_lines(text)
        .filter(|(_, l)| *l != GRAPH6_HEADER)
        .map(|(line, l)| decode_graph6_line(line, l))
        .collect()
}

/// Parse all graphs in `text`. Edge-list, JSON and polygon inputs hold one
/// graph; graph6 holds one graph per line.
pub fn parse_graphs(text: &str, format: Option<Format>) -> Result<Vec<Graph>, ParseError> {
    let format = format.unwrap_or_else(|| detect_format(text));
    let graphs = match format {
        Format::Edgelist => vec![parse_edge_list(text)?],
        Format::Json => parse_json_stream(text)?,
        Format::Polygon => vec![parse_polygon(text)?],
        Format::Graph6 => parse_graph6_stream(text)?,
    };
    if graphs.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(graphs)
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list(g),
        Format::Graph6 => encode_graph6(g) + "\n",
        Format::Json => write_json(g) + "\n",
        Format::Polygon => {
            let n = g.n();
            let chords: Vec<_> = g
                .edges()
                .into_iter()
                .filter(|&(u, v)| !(v == u + 1 || (u == 0 && v + 1 == n)))
                .collect();
            write_polygon(n, &chords)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n\n# comment\n2 3\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("2 2\n0 1\n1 0\n"),
            Err(ParseError::Graph { line: 3, source: GraphError::DuplicateEdge { u: 1, v: 0 } })
        );
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1\n1 2\n"), Err(ParseError::Syntax { line: 3, .. })));
        assert_eq!(
            parse_edge_list("3 1\n0 3\n"),
            Err(ParseError::Graph { line: 2, source: GraphError::OutOfRange { u: 0, v: 3, n: 3 } })
        );
        assert_eq!(parse_edge_list(""), Err(ParseError::Empty));
    }

    #[test]
    fn graph6_known_strings() {
        // from the nauty format description
        let g = decode_graph6("DQc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6(">>graph6<<A_").unwrap().edges(), vec![(0, 1)]);
        assert_eq!(decode_graph6("@").unwrap().n(), 1);
        assert_eq!(decode_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_rejects_bad_lengths() {
        assert!(decode_graph6("DQ").is_err());
        assert!(decode_graph6("DQcc").is_err());
        assert!(decode_graph6("D Q").is_err());
    }

    #[test]
    fn graph6_large_sizes() {
        let g = Graph::from_edges(63, [(0, 62), (5, 6)]).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn polygon_shorthand() {
        let g = parse_polygon("4 1\n0 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(parse_polygon(&write_graph(&g, Format::Polygon)).unwrap(), g);
        assert!(parse_polygon("4 1\n0 1\n").is_err());
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("4 3\n0 1\n"), Format::Edgelist);
        assert_eq!(detect_format("C~\nDQc\n"), Format::Graph6);
        assert_eq!(detect_format("{\"n\":1,\"edges\":[]}"), Format::Json);
        let gs = parse_graphs("C~\nDQc\n", None).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0].m(), 6);
    }

    #[test]
    fn json_lines() {
        let gs = parse_graphs("{\"n\":2,\"edges\":[[0,1]]}\n{\"n\":1,\"edges\":[]}\n", None).unwrap();
        assert_eq!(gs.len(), 2);
        let err = parse_graphs("{\"n\":2,\"edges\":[[0,1]]}\n{\"n\":2,\"edges\":[[0,5]]}\n", None).unwrap_err();
        assert!(matches!(err, ParseError::Graph { line: 2, .. }), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let g = parse_json(r#"{"n": 3, "edges": [[0, 1], [2, 1]]}"#).unwrap();
        assert_eq!(parse_json(&write_json(&g)).unwrap(), g);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..70).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trips(g in arb_graph()) {
            prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
