//! Text formats: MG1, its JSON mirror, and DOT export.
//!
//! MG1 is line oriented. Each line is exactly one of
//!
//! ```text
//! # free comment
//! v <id>
//! e <id> <u> <w>
//! t <edge-id>
//! ```
//!
//! with single spaces between tokens, decimal ids without leading zeros and
//! LF line endings. `u == w` encodes a loop. `t` lines are only written by
//! [`emit_mg1_with_tree`] and carry a spanning tree witness for the graph
//! above them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// A parsed MG1 file: the graph plus an optional witness tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mg1Document {
    pub graph: MultiGraph,
    pub tree: Option<Vec<EdgeId>>,
}

fn parse_id(tok: &str, line: usize) -> Result<u32> {
    let ok = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && (tok == "0" || !tok.starts_with('0'));
    if !ok {
        return Err(Error::Parse {
            line,
            message: format!("expected a decimal id, found {tok:?}"),
        });
    }
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("id {tok} out of range"),
    })
}

pub fn parse_mg1_document(text: &str) -> Result<Mg1Document> {
    let mut vertices: Vec<(VertexId, usize)> = Vec::new();
    let mut edges: Vec<(EdgeId, VertexId, VertexId, usize)> = Vec::new();
    let mut tree: Option<Vec<EdgeId>> = None;
    let mut seen_v = BTreeSet::new();
    let mut seen_e = BTreeSet::new();

    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty input".into(),
        });
    }
    for (i, raw) in body.split('\n').enumerate() {
        let line = i + 1;
        if raw.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse { line, message };
        if raw.contains('\r') || raw.contains('\t') {
            return Err(bad(
                "only LF line endings and single spaces are allowed".into()
            ));
        }
        let toks: Vec<&str> = raw.split(' ').collect();
        match toks.as_slice() {
            ["v", id] => {
                let v = VertexId(parse_id(id, line)?);
                if !seen_v.insert(v) {
                    return Err(bad(format!("duplicate vertex id {v}")));
                }
                vertices.push((v, line));
            }
            ["e", id, u, w] => {
                let e = EdgeId(parse_id(id, line)?);
                if !seen_e.insert(e) {
                    return Err(bad(format!("duplicate edge id {e}")));
                }
                edges.push((
                    e,
                    VertexId(parse_id(u, line)?),
                    VertexId(parse_id(w, line)?),
                    line,
                ));
            }
            ["t", id] => tree
                .get_or_insert_with(Vec::new)
                .push(EdgeId(parse_id(id, line)?)),
            _ => return Err(bad(format!("unrecognised line {raw:?}"))),
        }
    }
    if vertices.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no vertices declared".into(),
        });
    }
    for &(e, u, w, line) in &edges {
        for x in [u, w] {
            if !seen_v.contains(&x) {
                return Err(Error::Parse {
                    line,
                    message: format!("edge {e}: dangling endpoint {x}"),
                });
            }
        }
    }
    if let Some(t) = &tree {
        if let Some(bad) = t.iter().find(|e| !seen_e.contains(e)) {
            return Err(Error::Parse {
                line: 0,
                message: format!("witness references unknown edge {bad}"),
            });
        }
    }
    let graph = MultiGraph::from_parts(
        vertices.into_iter().map(|(v, _)| v),
        edges.into_iter().map(|(e, u, w, _)| (e, u, w)),
    )?;
    Ok(Mg1Document { graph, tree })
}

/// Parses MG1 text, ignoring any witness lines.
pub fn parse_mg1(text: &str) -> Result<MultiGraph> {
    parse_mg1_document(text).map(|d| d.graph)
}

/// Canonical MG1: vertices ascending, then edges ascending by id.
pub fn emit_mg1(g: &MultiGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.id, e.u, e.w).unwrap();
    }
    out
}

pub fn emit_mg1_with_tree(g: &MultiGraph, tree: &[EdgeId]) -> String {
    let mut out = emit_mg1(g);
    writeln!(out, "# splitting tree witness ({} edges)", tree.len()).unwrap();
    for e in tree {
        writeln!(out, "t {e}").unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    id: EdgeId,
    u: VertexId,
    w: VertexId,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<VertexId>,
    edges: Vec<JsonEdge>,
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonGraph {
            vertices: self.vertices().to_vec(),
            edges: self
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    id: e.id,
                    u: e.u,
                    w: e.w,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = JsonGraph::deserialize(d)?;
        MultiGraph::from_parts(j.vertices, j.edges.into_iter().map(|e| (e.id, e.u, e.w)))
            .map_err(serde::de::Error::custom)
    }
}

pub fn parse_json(text: &str) -> Result<MultiGraph> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn emit_json(g: &MultiGraph) -> String {
    serde_json::to_string(g).expect("graph serializes")
}

/// Picks MG1 or JSON by the first non-blank character.
pub fn parse_any(text: &str) -> Result<MultiGraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_mg1(text)
    }
}

pub fn emit_dot(g: &MultiGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  v{v};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  v{} -- v{} [label=\"e{}\"];", e.u, e.w, e.id).unwrap();
    }
    out.push_str("}\n");
    out
}
