//! Text formats for graphs, marked graphs, and colorings.
//!
//! Graph format: optional `#` comment lines, one header `p graph <n> <m>`,
//! then exactly `m` lines `e <u> <v>` with 0-based endpoints, `u != v`,
//! duplicates rejected. Marked graphs append `me <label> <a> <b>` and
//! `mv <label> <v>` lines. Colorings are `c <edge-index> <0|1>` lines,
//! edge indices in the graph's fixed enumeration. A JSON alternative
//! (`{"n": .., "edges": [[u, v], ..]}`) is accepted when the input starts
//! with `{`.

use thiserror::Error;

use crate::arrowing::{Color, EdgeColoring};
use crate::error::{GraphError, MarkError};
use crate::gadget::MarkedGraph;
use crate::graph::{Graph, GraphJson};

/// Format error with a 1-based line number where applicable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `p graph <n> <m>` header")]
    MissingHeader,
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Mark(#[from] MarkError),
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    words: trimmed.split_whitespace().collect(),
                })
            }
        })
        .collect()
}

fn parse_number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T, FormatError> {
    word.parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{word}`")))
}

/// Parses the plain graph format, or JSON when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        return Ok(Graph::new(json.n, json.edges)?);
    }
    let (graph, rest) = parse_graph_lines(text)?;
    if let Some(line) = rest.first() {
        return Err(malformed(
            line.number,
            format!("unexpected `{}` line in a plain graph file", line.words[0]),
        ));
    }
    Ok(graph)
}

fn parse_graph_lines(text: &str) -> Result<(Graph, Vec<Line<'_>>), FormatError> {
    let lines = content_lines(text);
    let Some(header) = lines.first() else {
        return Err(FormatError::MissingHeader);
    };
    if header.words.len() != 4 || header.words[0] != "p" || header.words[1] != "graph" {
        return Err(malformed(header.number, "expected `p graph <n> <m>`"));
    }
    let n: usize = parse_number(header.number, header.words[2], "vertex count")?;
    let m: usize = parse_number(header.number, header.words[3], "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut consumed = 1;
    for line in &lines[1..] {
        if line.words[0] != "e" || edges.len() == m {
            break;
        }
        if line.words.len() != 3 {
            return Err(malformed(line.number, "expected `e <u> <v>`"));
        }
        let u: u32 = parse_number(line.number, line.words[1], "endpoint")?;
        let v: u32 = parse_number(line.number, line.words[2], "endpoint")?;
        edges.push((u, v));
        consumed += 1;
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = Graph::new(n, edges)?;
    Ok((graph, lines.into_iter().skip(consumed).collect()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

/// Parses the marked-graph format: graph lines followed by `me`/`mv` lines.
pub fn parse_marked_graph(text: &str) -> Result<MarkedGraph, FormatError> {
    let (graph, rest) = parse_graph_lines(text)?;
    let mut marked = MarkedGraph::new(graph);
    for line in rest {
        match line.words[0] {
            "me" => {
                if line.words.len() != 4 {
                    return Err(malformed(line.number, "expected `me <label> <a> <b>`"));
                }
                let a: u32 = parse_number(line.number, line.words[2], "endpoint")?;
                let b: u32 = parse_number(line.number, line.words[3], "endpoint")?;
                marked.mark_edge(line.words[1], a, b)?;
            }
            "mv" => {
                if line.words.len() != 3 {
                    return Err(malformed(line.number, "expected `mv <label> <v>`"));
                }
                let v: u32 = parse_number(line.number, line.words[2], "vertex")?;
                marked.mark_vertex(line.words[1], v)?;
            }
            other => {
                return Err(malformed(line.number, format!("unexpected line kind `{other}`")));
            }
        }
    }
    Ok(marked)
}

pub fn write_marked_graph(g: &MarkedGraph) -> String {
    let mut out = write_graph(&g.graph);
    for (label, (a, b)) in g.edge_marks() {
        out.push_str(&format!("me {label} {a} {b}\n"));
    }
    for (label, v) in g.vertex_marks() {
        out.push_str(&format!("mv {label} {v}\n"));
    }
    out
}

/// Parses a coloring for a graph with `edge_count` edges. Every edge index
/// must be assigned exactly once.
pub fn parse_coloring(text: &str, edge_count: usize) -> Result<EdgeColoring, FormatError> {
    let mut colors: Vec<Option<Color>> = vec![None; edge_count];
    for line in content_lines(text) {
        if line.words.len() != 3 || line.words[0] != "c" {
            return Err(malformed(line.number, "expected `c <edge-index> <0|1>`"));
        }
        let index: usize = parse_number(line.number, line.words[1], "edge index")?;
        if index >= edge_count {
            return Err(malformed(
                line.number,
                format!("edge index {index} out of range for {edge_count} edges"),
            ));
        }
        let bit: u8 = parse_number(line.number, line.words[2], "color bit")?;
        let color = Color::from_bit(bit)
            .ok_or_else(|| malformed(line.number, format!("invalid color bit `{bit}`")))?;
        if colors[index].is_some() {
            return Err(malformed(line.number, format!("edge {index} colored twice")));
        }
        colors[index] = Some(color);
    }
    let missing = colors.iter().filter(|c| c.is_none()).count();
    if missing > 0 {
        return Err(malformed(
            0,
            format!("{missing} edge(s) left uncolored of {edge_count}"),
        ));
    }
    Ok(EdgeColoring::new(colors.into_iter().map(|c| c.unwrap()).collect()))
}

pub fn write_coloring(c: &EdgeColoring) -> String {
    let mut out = String::new();
    for (i, color) in c.iter().enumerate() {
        out.push_str(&format!("c {i} {}\n", color.as_bit()));
    }
    out
}
