//! Text and JSON formats for graphs, list assignments and partitions.
//!
//! Signed graph text:
//!
//! ```text
//! c optional comment
//! p sg 2 2
//! e 0 1 +
//! e 0 1 -
//! ```
//!
//! Simple graphs use `p g <n> <m>` and unsigned `e <u> <v>` lines. The
//! JSON forms are `{"n":2,"edges":[[0,1,1],[0,1,-1]]}` and
//! `{"n":2,"edges":[[0,1]]}`. Serializers emit edges sorted by
//! `(u, v, sign)` with `+` before `-`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::reduce::SimpleGraph;
use crate::solve::{Color, ListAssignment, ListMode};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// An edge line's 1-based number and its fields after the `e`.
type EdgeLine<'a> = (usize, Vec<&'a str>);

/// Header counts and edge lines.
fn dimacs_lines<'a>(text: &'a str, kind: &str) -> Result<(usize, usize, Vec<EdgeLine<'a>>)> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate header"));
                }
                if fields.len() != 4 || fields[1] != kind {
                    return Err(syntax(line, format!("expected `p {kind} <n> <m>`")));
                }
                let n = parse_count(line, fields[2])?;
                let m = parse_count(line, fields[3])?;
                if n == 0 {
                    return Err(syntax(line, Error::EmptyGraph.to_string()));
                }
                header = Some((n, m));
            }
            Some(&"e") => {
                if header.is_none() {
                    return Err(syntax(line, "edge before header"));
                }
                edges.push((line, fields[1..].to_vec()));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(1, "missing header"))?;
    if edges.len() != m {
        return Err(syntax(
            text.lines().count().max(1),
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok((n, m, edges))
}

fn parse_count(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| syntax(line, format!("`{s}` is not a nonnegative integer")))
}

fn parse_endpoint(line: usize, s: &str, n: usize) -> Result<usize> {
    let v = parse_count(line, s)?;
    if v >= n {
        return Err(syntax(line, Error::VertexOutOfRange { vertex: v, n }.to_string()));
    }
    Ok(v)
}

/// Parses a signed graph from either the text or the JSON form.
pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    if looks_like_json(text) {
        return parse_graph_json(text);
    }
    let (n, _, lines) = dimacs_lines(text, "sg")?;
    let mut edges = Vec::with_capacity(lines.len());
    for (line, fields) in lines {
        if fields.len() != 3 {
            return Err(syntax(line, "expected `e <u> <v> <+|->`"));
        }
        let u = parse_endpoint(line, fields[0], n)?;
        let v = parse_endpoint(line, fields[1], n)?;
        let sign = match fields[2] {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            s => return Err(syntax(line, format!("bad sign `{s}`"))),
        };
        edges.push((u, v, sign));
        // report loops and repeats at the offending line
        SignedGraph::new(n, &edges).map_err(|e| syntax(line, e.to_string()))?;
    }
    SignedGraph::new(n, &edges)
}

pub fn serialize_graph(g: &SignedGraph) -> String {
    let mut out = format!("p sg {} {}\n", g.vertex_count(), g.edges().len());
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.sign));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphDoc<E> {
    n: usize,
    edges: Vec<E>,
}

fn json_error(e: serde_json::Error) -> Error {
    syntax(e.line(), e.to_string())
}

pub fn parse_graph_json(text: &str) -> Result<SignedGraph> {
    let doc: GraphDoc<(usize, usize, i64)> = serde_json::from_str(text).map_err(json_error)?;
    if doc.n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges = doc
        .edges
        .iter()
        .map(|&(u, v, s)| {
            Sign::from_int(s)
                .map(|sign| (u, v, sign))
                .ok_or_else(|| syntax(1, format!("sign {s} is not 1 or -1")))
        })
        .collect::<Result<Vec<_>>>()?;
    SignedGraph::new(doc.n, &edges)
}

pub fn serialize_graph_json(g: &SignedGraph) -> String {
    let doc = GraphDoc {
        n: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.sign.value()))
            .collect(),
    };
    serde_json::to_string(&doc).unwrap()
}

/// Parses a simple graph from either the text or the JSON form.
pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    if looks_like_json(text) {
        let doc: GraphDoc<(usize, usize)> = serde_json::from_str(text).map_err(json_error)?;
        if doc.n == 0 {
            return Err(Error::EmptyGraph);
        }
        return SimpleGraph::new(doc.n, &doc.edges);
    }
    let (n, _, lines) = dimacs_lines(text, "g")?;
    let mut edges = Vec::with_capacity(lines.len());
    for (line, fields) in lines {
        if fields.len() != 2 {
            return Err(syntax(line, "expected `e <u> <v>`"));
        }
        let u = parse_endpoint(line, fields[0], n)?;
        let v = parse_endpoint(line, fields[1], n)?;
        edges.push((u, v));
        SimpleGraph::new(n, &edges).map_err(|e| syntax(line, e.to_string()))?;
    }
    SimpleGraph::new(n, &edges)
}

pub fn serialize_simple_graph(g: &SimpleGraph) -> String {
    let mut out = format!("p g {} {}\n", g.vertex_count(), g.edges().len());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// `{"mode": "zero-free", "lists": {"0": [1, 2], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsDoc {
    pub mode: ListMode,
    pub lists: BTreeMap<usize, Vec<Color>>,
}

impl ListsDoc {
    pub fn from_assignment(lists: &ListAssignment) -> ListsDoc {
        ListsDoc {
            mode: lists.mode(),
            lists: lists.lists().iter().cloned().enumerate().collect(),
        }
    }

    /// Requires an entry for every vertex `0..n` and nothing else.
    pub fn to_assignment(&self, n: usize) -> Result<ListAssignment> {
        if let Some((&v, _)) = self.lists.range(n..).next() {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let lists = (0..n)
            .map(|v| self.lists.get(&v).cloned().ok_or(Error::MissingVertexColor(v)))
            .collect::<Result<Vec<_>>>()?;
        ListAssignment::new(self.mode, lists)
    }
}

pub fn parse_lists(text: &str, n: usize) -> Result<ListAssignment> {
    let doc: ListsDoc = serde_json::from_str(text).map_err(json_error)?;
    doc.to_assignment(n)
}

pub fn serialize_lists(lists: &ListAssignment) -> String {
    serde_json::to_string(&ListsDoc::from_assignment(lists)).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PartsDoc {
    parts: Vec<Vec<usize>>,
}

/// `{"parts": [[0, 1], [2]]}`.
pub fn parse_parts(text: &str) -> Result<Vec<Vec<usize>>> {
    let doc: PartsDoc = serde_json::from_str(text).map_err(json_error)?;
    Ok(doc.parts)
}

pub fn serialize_parts(parts: &[Vec<usize>]) -> String {
    serde_json::to_string(&PartsDoc {
        parts: parts.to_vec(),
    })
    .unwrap()
}
