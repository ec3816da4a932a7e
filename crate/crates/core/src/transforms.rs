//! Vertex splitting, edge contraction and the flexibility tests built on
//! them.
//!
//! Splitting `v` replaces it by two adjacent vertices `v'` and `v''`, hands
//! every edge-end at `v` to one of them, and joins them by the new
//! *splitting edge*. Contracting the splitting edge undoes the split exactly:
//! `v'` keeps the id of `v`, every edge keeps its id, and contraction keeps
//! the smaller endpoint id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// One end of an edge: `end` is 0 for the lower endpoint and 1 for the
/// upper one, so a loop owns ends 0 and 1 at the same vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(EdgeId, u8)", into = "(EdgeId, u8)")]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: u8,
}

impl From<(EdgeId, u8)> for EdgeEnd {
    fn from((edge, end): (EdgeId, u8)) -> Self {
        EdgeEnd { edge, end }
    }
}

impl From<EdgeEnd> for (EdgeId, u8) {
    fn from(e: EdgeEnd) -> Self {
        (e.edge, e.end)
    }
}

/// Edge-ends at `v` in edge-id order.
pub fn ends_at(g: &MultiGraph, v: VertexId) -> Vec<EdgeEnd> {
    let mut out = Vec::new();
    for e in g.incident(v) {
        if e.is_loop() {
            out.push(EdgeEnd { edge: e.id, end: 0 });
            out.push(EdgeEnd { edge: e.id, end: 1 });
        } else {
            let end = if e.u == v { 0 } else { 1 };
            out.push(EdgeEnd { edge: e.id, end });
        }
    }
    out
}

/// Which edge-ends at `vertex` go to `v'`; the rest go to `v''`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SplitSpec {
    pub vertex: VertexId,
    #[serde(rename = "sideA")]
    pub side_a: BTreeSet<EdgeEnd>,
}

impl SplitSpec {
    pub fn new(vertex: VertexId, side_a: impl IntoIterator<Item = EdgeEnd>) -> Self {
        SplitSpec {
            vertex,
            side_a: side_a.into_iter().collect(),
        }
    }

    /// Side A holds every edge from `vertex` to one of `neighbors`. Only for
    /// vertices without loops.
    pub fn by_neighbors(g: &MultiGraph, vertex: VertexId, neighbors: &[VertexId]) -> Result<Self> {
        let nb = g.neighbors(vertex)?;
        if let Some(x) = neighbors.iter().find(|x| !nb.contains(x)) {
            return Err(Error::InvalidSplit(format!(
                "{x} is not a neighbour of {vertex}"
            )));
        }
        if g.incident(vertex).any(|e| e.is_loop()) {
            return Err(Error::InvalidSplit(format!(
                "{vertex} carries a loop; give the edge-ends explicitly"
            )));
        }
        let side_a = g
            .incident(vertex)
            .filter(|e| neighbors.contains(&e.other(vertex).unwrap()))
            .map(|e| EdgeEnd {
                edge: e.id,
                end: if e.u == vertex { 0 } else { 1 },
            });
        Ok(SplitSpec::new(vertex, side_a))
    }

    pub fn side_b(&self, g: &MultiGraph) -> Vec<EdgeEnd> {
        ends_at(g, self.vertex)
            .into_iter()
            .filter(|e| !self.side_a.contains(e))
            .collect()
    }
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "split {} A=[", self.vertex)?;
        for (i, e) in self.side_a.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}.{}", e.edge, e.end)?;
        }
        f.write_str("]")
    }
}

impl SplitSpec {
    /// True when every loop at the split vertex has one end on each side.
    pub fn loops_straddle(&self, g: &MultiGraph) -> bool {
        g.incident(self.vertex).filter(|e| e.is_loop()).all(|e| {
            self.side_a.contains(&EdgeEnd { edge: e.id, end: 0 })
                != self.side_a.contains(&EdgeEnd { edge: e.id, end: 1 })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SplitOptions {
    /// Accept loops at the split vertex, assigning their two ends
    /// independently.
    pub allow_loops: bool,
    /// Require at least two ends per side so both new vertices keep degree
    /// three or more.
    pub preserve_min_degree: bool,
}

impl SplitOptions {
    pub fn permissive() -> Self {
        SplitOptions {
            allow_loops: true,
            preserve_min_degree: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub graph: MultiGraph,
    pub v_prime: VertexId,
    pub v_double_prime: VertexId,
    pub splitting_edge: EdgeId,
    /// Old edge id to new edge id. Splitting never renames edges, so this is
    /// the identity on the old edges.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

pub fn split_vertex(g: &MultiGraph, spec: &SplitSpec, opts: &SplitOptions) -> Result<SplitResult> {
    let v = spec.vertex;
    let degree = g.degree(v)?;
    if degree < 4 {
        return Err(Error::InvalidSplit(format!(
            "vertex {v} has degree {degree}, splitting needs at least 4"
        )));
    }
    let ends = ends_at(g, v);
    if let Some(x) = spec.side_a.iter().find(|x| !ends.contains(x)) {
        return Err(Error::InvalidSplit(format!(
            "edge-end {}.{} is not at vertex {v}",
            x.edge, x.end
        )));
    }
    let side_b = ends.len() - spec.side_a.len();
    let need = if opts.preserve_min_degree { 2 } else { 1 };
    if spec.side_a.len() < need || side_b < need {
        return Err(Error::InvalidSplit(format!(
            "sides hold {} and {side_b} ends, each needs at least {need}",
            spec.side_a.len()
        )));
    }
    if !opts.allow_loops {
        if let Some(e) = g.incident(v).find(|e| e.is_loop()) {
            return Err(Error::InvalidSplit(format!(
                "loop {} at {v}; enable loop-end assignment to split here",
                e.id
            )));
        }
    }

    let v1 = v;
    let v2 = g.fresh_vertex_id();
    let split_edge = g.fresh_edge_id();
    let side = |edge: EdgeId, end: u8| {
        if spec.side_a.contains(&EdgeEnd { edge, end }) {
            v1
        } else {
            v2
        }
    };
    let mut edges = Vec::with_capacity(g.edge_count() + 1);
    for e in g.edges() {
        let (a, b) = if e.is_loop() && e.u == v {
            (side(e.id, 0), side(e.id, 1))
        } else if e.u == v {
            (side(e.id, 0), e.w)
        } else if e.w == v {
            (e.u, side(e.id, 1))
        } else {
            (e.u, e.w)
        };
        edges.push((e.id, a, b));
    }
    edges.push((split_edge, v1, v2));
    let graph = MultiGraph::from_parts(g.vertices().iter().copied().chain([v2]), edges)?;
    Ok(SplitResult {
        graph,
        v_prime: v1,
        v_double_prime: v2,
        splitting_edge: split_edge,
        edge_map: g.edges().iter().map(|e| (e.id, e.id)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// The surviving endpoint (the smaller id).
    pub merged: VertexId,
    pub removed: VertexId,
    /// Old edge id to new edge id for every surviving edge.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

/// Merges the endpoints of a non-loop edge. Other edges between them become
/// loops.
pub fn contract_edge(g: &MultiGraph, e: EdgeId) -> Result<Contraction> {
    let edge = *g.edge(e)?;
    if edge.is_loop() {
        return Err(Error::LoopContraction(e));
    }
    let (keep, gone) = (edge.u, edge.w);
    let moved = |x: VertexId| if x == gone { keep } else { x };
    let graph = MultiGraph::from_parts(
        g.vertices().iter().copied().filter(|&x| x != gone),
        g.edges()
            .iter()
            .filter(|x| x.id != e)
            .map(|x| (x.id, moved(x.u), moved(x.w))),
    )?;
    Ok(Contraction {
        graph,
        merged: keep,
        removed: gone,
        edge_map: g
            .edges()
            .iter()
            .filter(|x| x.id != e)
            .map(|x| (x.id, x.id))
            .collect(),
    })
}

fn closed_neighborhood(g: &MultiGraph, vs: &[VertexId]) -> BTreeSet<VertexId> {
    let mut s: BTreeSet<VertexId> = vs.iter().copied().collect();
    for &v in vs {
        s.extend(g.neighbors_unchecked(v));
    }
    s
}

/// Subgraph of the split graph induced by `v'`, `v''` and their neighbours.
pub fn splitting_subgraph(r: &SplitResult) -> MultiGraph {
    r.graph.induced_subgraph(&closed_neighborhood(
        &r.graph,
        &[r.v_prime, r.v_double_prime],
    ))
}

fn non_loop(g: &MultiGraph, e: EdgeId) -> Result<(VertexId, VertexId)> {
    let edge = g.edge(e)?;
    if edge.is_loop() {
        Err(Error::LoopEdge(e))
    } else {
        Ok((edge.u, edge.w))
    }
}

/// Induced by both endpoints of `e` and all their neighbours.
pub fn edge_global_subgraph(g: &MultiGraph, e: EdgeId) -> Result<MultiGraph> {
    let (a, b) = non_loop(g, e)?;
    Ok(g.induced_subgraph(&closed_neighborhood(g, &[a, b])))
}

/// Induced by the neighbours of the endpoints of `e`, endpoints excluded.
pub fn edge_local_subgraph(g: &MultiGraph, e: EdgeId) -> Result<MultiGraph> {
    let (a, b) = non_loop(g, e)?;
    let mut s = closed_neighborhood(g, &[a, b]);
    s.remove(&a);
    s.remove(&b);
    Ok(g.induced_subgraph(&s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "type-I")]
    TypeI,
    #[serde(rename = "type-II")]
    TypeII,
    #[serde(rename = "condition-I")]
    ConditionI,
    #[serde(rename = "condition-II")]
    ConditionII,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::TypeI => "type-I",
            Rule::TypeII => "type-II",
            Rule::ConditionI => "condition-I",
            Rule::ConditionII => "condition-II",
            Rule::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    Vertex(VertexId),
    Split(SplitSpec),
    Edge(EdgeId),
}

/// What was observed in the checked subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Finding {
    /// Whether the subgraph is connected and non-empty.
    Connected(bool),
    /// Whether `edge` is a cut-edge of the subgraph.
    CutEdge { edge: EdgeId, cut: bool },
    /// Whether the subgraph has no loops.
    LoopFree(bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub rule: Rule,
    pub subgraph: MultiGraph,
    /// Degree of the vertex being split, or of the vertex a contraction
    /// would create.
    pub degree: usize,
    pub finding: Finding,
    pub holds: bool,
}

impl Evidence {
    /// Recomputes the finding from the stored subgraph.
    pub fn reproduces(&self) -> bool {
        match self.finding {
            Finding::Connected(c) => self.subgraph.is_connected() == c,
            Finding::CutEdge { edge, cut } => self.subgraph.is_cut_edge(edge) == Ok(cut),
            Finding::LoopFree(f) => self.subgraph.edges().iter().all(|e| !e.is_loop()) == f,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlexibilityVerdict {
    pub subject: Subject,
    pub flexible: bool,
    pub rule: Rule,
    pub evidence: Vec<Evidence>,
}

/// Degree at least 4 and a connected, non-empty local subgraph.
pub fn is_type1_flexible(g: &MultiGraph, v: VertexId) -> Result<FlexibilityVerdict> {
    let degree = g.degree(v)?;
    let local = g.local_subgraph(v)?;
    let connected = local.is_connected();
    let holds = degree >= 4 && connected;
    Ok(FlexibilityVerdict {
        subject: Subject::Vertex(v),
        flexible: holds,
        rule: if holds { Rule::TypeI } else { Rule::None },
        evidence: vec![Evidence {
            rule: Rule::TypeI,
            subgraph: local,
            degree,
            finding: Finding::Connected(connected),
            holds,
        }],
    })
}

/// At a degree-4 vertex: the splitting edge of `spec` is not a cut-edge of
/// the splitting subgraph.
pub fn is_type2_flexible_split(
    g: &MultiGraph,
    spec: &SplitSpec,
    opts: &SplitOptions,
) -> Result<FlexibilityVerdict> {
    let degree = g.degree(spec.vertex)?;
    if degree != 4 {
        return Err(Error::Precondition(format!(
            "type-II splitting is defined at degree 4, vertex {} has degree {degree}",
            spec.vertex
        )));
    }
    let r = split_vertex(g, spec, opts)?;
    let sub = splitting_subgraph(&r);
    let cut = sub.is_cut_edge(r.splitting_edge)?;
    Ok(FlexibilityVerdict {
        subject: Subject::Split(spec.clone()),
        flexible: !cut,
        rule: if cut { Rule::None } else { Rule::TypeII },
        evidence: vec![Evidence {
            rule: Rule::TypeII,
            subgraph: sub,
            degree,
            finding: Finding::CutEdge {
                edge: r.splitting_edge,
                cut,
            },
            holds: !cut,
        }],
    })
}

/// Flexible if the edge is not a cut-edge of its edge-global subgraph and
/// contracting it yields degree exactly 4 (condition I), or its edge-local
/// subgraph is connected and contracting yields degree at least 4
/// (condition II). Condition I is reported when both hold.
///
/// Both conditions also require that neither endpoint carries a loop. The
/// contraction is then the inverse of a split in which every loop at the
/// merged vertex (the former parallels of `e`) straddles the two sides; a
/// loop kept whole on one side can flip the verdict (see the findings
/// tests).
pub fn is_flexible_edge(g: &MultiGraph, e: EdgeId) -> Result<FlexibilityVerdict> {
    let (a, b) = non_loop(g, e)?;
    let merged = g.degree_unchecked(a) + g.degree_unchecked(b) - 2;

    let ends = g.induced_subgraph(&[a, b].into_iter().collect());
    let loop_free = ends.edges().iter().all(|x| !x.is_loop());

    let global = edge_global_subgraph(g, e)?;
    let cut = global.is_cut_edge(e)?;
    let cond1 = loop_free && !cut && merged == 4;

    let local = edge_local_subgraph(g, e)?;
    let connected = local.is_connected();
    let cond2 = loop_free && connected && merged >= 4;

    let rule = if cond1 {
        Rule::ConditionI
    } else if cond2 {
        Rule::ConditionII
    } else {
        Rule::None
    };
    Ok(FlexibilityVerdict {
        subject: Subject::Edge(e),
        flexible: rule != Rule::None,
        rule,
        evidence: vec![
            Evidence {
                rule: Rule::ConditionI,
                subgraph: global,
                degree: merged,
                finding: Finding::CutEdge { edge: e, cut },
                holds: cond1,
            },
            Evidence {
                rule: Rule::ConditionII,
                subgraph: local,
                degree: merged,
                finding: Finding::Connected(connected),
                holds: cond2,
            },
            Evidence {
                rule: Rule::None,
                subgraph: ends,
                degree: merged,
                finding: Finding::LoopFree(loop_free),
                holds: loop_free,
            },
        ],
    })
}

/// Every split of `v` allowed by `opts`, listed once per unordered pair of
/// sides (the first edge-end always goes to side A).
pub fn split_specs(g: &MultiGraph, v: VertexId, opts: &SplitOptions) -> Result<Vec<SplitSpec>> {
    let degree = g.degree(v)?;
    if degree < 4 || (!opts.allow_loops && g.incident(v).any(|e| e.is_loop())) {
        return Ok(Vec::new());
    }
    let ends = ends_at(g, v);
    let need = if opts.preserve_min_degree { 2 } else { 1 };
    let rest = ends.len() - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << rest) {
        let side_a: Vec<EdgeEnd> = std::iter::once(ends[0])
            .chain(
                (0..rest)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| ends[i + 1]),
            )
            .collect();
        let a = side_a.len();
        if a >= need && ends.len() - a >= need {
            out.push(SplitSpec::new(v, side_a));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Fixture};
    use crate::io::emit_mg1;
    use crate::iso::are_isomorphic;

    fn spec_by_labels(f: &Fixture, v: &str, side_a: &[&str]) -> SplitSpec {
        let nbs: Vec<VertexId> = side_a.iter().map(|l| f.v(l)).collect();
        SplitSpec::by_neighbors(&f.graph, f.v(v), &nbs).unwrap()
    }

    fn label_edges(f: &Fixture, g: &MultiGraph) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|e| {
                let mut p = [
                    f.label(e.u).unwrap().to_string(),
                    f.label(e.w).unwrap().to_string(),
                ];
                p.sort();
                let [a, b] = p;
                (a, b)
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn figure_splits_reproduce_figures() {
        let f4 = fixtures::fig4_g();
        let opts = SplitOptions::default();
        for (side, want) in [
            (["b", "f"], fixtures::fig5_g1()),
            (["b", "c"], fixtures::fig6_g2()),
        ] {
            let r = split_vertex(&f4.graph, &spec_by_labels(&f4, "v", &side), &opts).unwrap();
            assert_eq!(emit_mg1(&r.graph), emit_mg1(&want.graph), "{}", want.name);
            assert_eq!(r.v_prime, want.v("v'"));
            assert_eq!(r.v_double_prime, want.v("v''"));
        }
        let f23 = fixtures::fig23_g();
        let r = split_vertex(
            &f23.graph,
            &spec_by_labels(&f23, "b", &["a", "t1", "t2"]),
            &opts,
        )
        .unwrap();
        let f24 = fixtures::fig24_gstar();
        assert_eq!(r.graph, f24.graph);
        assert_eq!(r.v_double_prime, f24.v("b''"));
    }

    #[test]
    fn split_bookkeeping() {
        let f4 = fixtures::fig4_g();
        let r = split_vertex(
            &f4.graph,
            &spec_by_labels(&f4, "v", &["b", "f"]),
            &SplitOptions::default(),
        )
        .unwrap();
        assert_eq!(r.graph.vertex_count(), f4.graph.vertex_count() + 1);
        assert_eq!(r.graph.edge_count(), f4.graph.edge_count() + 1);
        assert_eq!(r.graph.betti(), f4.graph.betti());
        let d = |x| r.graph.degree(x).unwrap();
        assert_eq!(d(r.v_prime) + d(r.v_double_prime), 4 + 2);
        assert!(r.edge_map.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn split_errors() {
        let k4 = MultiGraph::complete(4);
        let low = SplitSpec::new(
            VertexId(0),
            [EdgeEnd {
                edge: EdgeId(0),
                end: 0,
            }],
        );
        assert!(matches!(
            split_vertex(&k4, &low, &SplitOptions::default()),
            Err(Error::InvalidSplit(_))
        ));

        let w = MultiGraph::wheel(4);
        let all = SplitSpec::new(VertexId(0), ends_at(&w, VertexId(0)));
        assert!(matches!(
            split_vertex(&w, &all, &SplitOptions::default()),
            Err(Error::InvalidSplit(_))
        ));
        let empty = SplitSpec::new(VertexId(0), []);
        assert!(split_vertex(&w, &empty, &SplitOptions::default()).is_err());

        let b2 = MultiGraph::bouquet(2);
        let spec = SplitSpec::new(
            VertexId(0),
            [
                EdgeEnd {
                    edge: EdgeId(0),
                    end: 0,
                },
                EdgeEnd {
                    edge: EdgeId(1),
                    end: 0,
                },
            ],
        );
        assert!(split_vertex(&b2, &spec, &SplitOptions::default()).is_err());
        let r = split_vertex(&b2, &spec, &SplitOptions::permissive()).unwrap();
        // both loops straddle the sides: three parallel edges
        assert!(are_isomorphic(&r.graph, &MultiGraph::theta()));

        let one_side = SplitSpec::new(
            VertexId(0),
            [
                EdgeEnd {
                    edge: EdgeId(0),
                    end: 0,
                },
                EdgeEnd {
                    edge: EdgeId(0),
                    end: 1,
                },
            ],
        );
        let r = split_vertex(&b2, &one_side, &SplitOptions::permissive()).unwrap();
        assert_eq!(r.graph.edges().iter().filter(|e| e.is_loop()).count(), 2);
    }

    #[test]
    fn min_degree_flag() {
        let w = MultiGraph::wheel(4);
        let spec = SplitSpec::new(
            VertexId(0),
            [EdgeEnd {
                edge: EdgeId(4),
                end: 0,
            }],
        );
        assert!(split_vertex(&w, &spec, &SplitOptions::default()).is_ok());
        let strict = SplitOptions {
            preserve_min_degree: true,
            ..SplitOptions::default()
        };
        assert!(split_vertex(&w, &spec, &strict).is_err());
    }

    #[test]
    fn contraction_examples() {
        let f5 = fixtures::fig5_g1();
        let splitting = EdgeId(26);
        let c = contract_edge(&f5.graph, splitting).unwrap();
        assert_eq!(c.graph, fixtures::fig4_g().graph);

        let c = contract_edge(&MultiGraph::theta(), EdgeId(0)).unwrap();
        assert!(are_isomorphic(&c.graph, &MultiGraph::bouquet(2)));
        assert_eq!(c.graph.betti(), Ok(2));

        let f1 = fixtures::fig1_g();
        let centre_top = EdgeId(3);
        let c = contract_edge(&f1.graph, centre_top).unwrap();
        assert_eq!(c.graph, fixtures::fig2_g1().graph);
        // contracting a spanning tree collapses K4 to three loops
        let mut g = f1.graph.clone();
        for e in [3, 2, 5] {
            g = contract_edge(&g, EdgeId(e)).unwrap().graph;
        }
        assert_eq!(g, fixtures::fig3_g2().graph.clone().tap_ids(&[0, 1, 4]));

        assert_eq!(
            contract_edge(&MultiGraph::bouquet(1), EdgeId(0)).unwrap_err(),
            Error::LoopContraction(EdgeId(0))
        );
    }

    trait TapIds {
        fn tap_ids(self, ids: &[u32]) -> MultiGraph;
    }

    impl TapIds for MultiGraph {
        fn tap_ids(self, ids: &[u32]) -> MultiGraph {
            MultiGraph::from_parts(
                self.vertices().iter().copied(),
                self.edges()
                    .iter()
                    .zip(ids)
                    .map(|(e, &i)| (EdgeId(i), e.u, e.w)),
            )
            .unwrap()
        }
    }

    fn split_of(f: &Fixture, v: &str, side: &[&str]) -> SplitResult {
        split_vertex(
            &f.graph,
            &spec_by_labels(f, v, side),
            &SplitOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn splitting_subgraph_examples() {
        let f4 = fixtures::fig4_g();
        let f5 = fixtures::fig5_g1();
        let r = split_of(&f4, "v", &["b", "f"]);
        let sub = splitting_subgraph(&r);
        let want: Vec<(String, String)> = [
            ("b", "c"),
            ("b", "v'"),
            ("c", "v''"),
            ("f", "g"),
            ("f", "v'"),
            ("g", "v''"),
            ("v'", "v''"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(label_edges(&f5, &sub), want);

        let f6 = fixtures::fig6_g2();
        let sub = splitting_subgraph(&split_of(&f4, "v", &["b", "c"]));
        let want: Vec<(String, String)> = [
            ("b", "c"),
            ("b", "v'"),
            ("c", "v'"),
            ("f", "g"),
            ("f", "v''"),
            ("g", "v''"),
            ("v'", "v''"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(label_edges(&f6, &sub), want);

        let f23 = fixtures::fig23_g();
        let f24 = fixtures::fig24_gstar();
        let sub = splitting_subgraph(&split_of(&f23, "b", &["a", "t1", "t2"]));
        assert_eq!(sub.vertex_count(), 7);
        let pairs = label_edges(&f24, &sub);
        assert!(pairs.contains(&("a".into(), "d".into())));
        assert_eq!(
            pairs
                .iter()
                .filter(|p| **p == ("d".into(), "e".into()))
                .count(),
            3
        );
    }

    #[test]
    fn type1_examples() {
        let k5 = MultiGraph::complete(5);
        assert!(is_type1_flexible(&k5, VertexId(2)).unwrap().flexible);
        let f4 = fixtures::fig4_g();
        assert!(!is_type1_flexible(&f4.graph, f4.v("v")).unwrap().flexible);
        let f23 = fixtures::fig23_g();
        let v = is_type1_flexible(&f23.graph, f23.v("b")).unwrap();
        assert!(!v.flexible);
        assert_eq!(v.evidence[0].subgraph.components().len(), 2);
        assert!(v.evidence[0].reproduces());
        // degree 3 is never type-I
        assert!(
            !is_type1_flexible(&MultiGraph::complete(4), VertexId(0))
                .unwrap()
                .flexible
        );
    }

    #[test]
    fn type2_examples() {
        let f4 = fixtures::fig4_g();
        let opts = SplitOptions::default();
        let yes = is_type2_flexible_split(&f4.graph, &spec_by_labels(&f4, "v", &["b", "f"]), &opts)
            .unwrap();
        assert!(yes.flexible && yes.rule == Rule::TypeII && yes.evidence[0].reproduces());
        let no = is_type2_flexible_split(&f4.graph, &spec_by_labels(&f4, "v", &["b", "c"]), &opts)
            .unwrap();
        assert!(!no.flexible && no.rule == Rule::None && no.evidence[0].reproduces());

        // wheel hub, opposite spokes on each side
        let w = MultiGraph::wheel(4);
        let hub = VertexId(0);
        let spec = SplitSpec::by_neighbors(&w, hub, &[VertexId(1), VertexId(3)]).unwrap();
        assert!(is_type2_flexible_split(&w, &spec, &opts).unwrap().flexible);

        let f23 = fixtures::fig23_g();
        let spec = spec_by_labels(&f23, "b", &["a", "t1", "t2"]);
        assert!(matches!(
            is_type2_flexible_split(&f23.graph, &spec, &opts),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn edge_subgraph_examples() {
        let th = MultiGraph::theta();
        assert_eq!(edge_global_subgraph(&th, EdgeId(0)).unwrap(), th);
        let p = MultiGraph::path(4);
        assert_eq!(edge_global_subgraph(&p, EdgeId(1)).unwrap(), p);
        assert_eq!(
            edge_global_subgraph(&MultiGraph::bouquet(1), EdgeId(0)),
            Err(Error::LoopEdge(EdgeId(0)))
        );

        let k4 = MultiGraph::complete(4);
        let local = edge_local_subgraph(&k4, EdgeId(0)).unwrap();
        assert_eq!((local.vertex_count(), local.edge_count()), (2, 1));

        let f24 = fixtures::fig24_gstar();
        let local = edge_local_subgraph(&f24.graph, EdgeId(11)).unwrap();
        let parts = local.components();
        let labels: Vec<Vec<&str>> = parts
            .components
            .iter()
            .map(|c| c.vertices.iter().map(|&v| f24.label(v).unwrap()).collect())
            .collect();
        assert_eq!(labels, vec![vec!["a", "d", "e"], vec!["t1", "t2"]]);

        let f5 = fixtures::fig5_g1();
        let local = edge_local_subgraph(&f5.graph, EdgeId(26)).unwrap();
        assert_eq!((local.vertex_count(), local.edge_count()), (4, 2));
        assert!(!local.is_connected());
        let global = edge_global_subgraph(&f5.graph, EdgeId(26)).unwrap();
        let r = split_of(&fixtures::fig4_g(), "v", &["b", "f"]);
        assert_eq!(global, splitting_subgraph(&r));
    }

    #[test]
    fn flexible_edge_examples() {
        let f5 = fixtures::fig5_g1();
        let v = is_flexible_edge(&f5.graph, EdgeId(26)).unwrap();
        assert!(v.flexible);
        assert_eq!(v.rule, Rule::ConditionI);
        assert!(v.evidence.iter().all(Evidence::reproduces));

        let f24 = fixtures::fig24_gstar();
        let v = is_flexible_edge(&f24.graph, EdgeId(11)).unwrap();
        assert!(!v.flexible);
        assert_eq!(v.evidence[0].degree, 5);

        // the splitting edge of fig6 is a bridge of its edge-global subgraph
        let f6 = fixtures::fig6_g2();
        let v = is_flexible_edge(&f6.graph, EdgeId(26)).unwrap();
        assert!(!v.flexible);
        assert_eq!(
            v.evidence[0].finding,
            Finding::CutEdge {
                edge: EdgeId(26),
                cut: true
            }
        );
    }

    #[test]
    fn split_spec_listing() {
        let w = MultiGraph::wheel(4);
        // 2^4 / 2 - 1 partitions of four ends into two non-empty sides
        assert_eq!(
            split_specs(&w, VertexId(0), &SplitOptions::default())
                .unwrap()
                .len(),
            7
        );
        let strict = SplitOptions {
            preserve_min_degree: true,
            ..SplitOptions::default()
        };
        assert_eq!(split_specs(&w, VertexId(0), &strict).unwrap().len(), 3);
        assert!(split_specs(
            &MultiGraph::bouquet(2),
            VertexId(0),
            &SplitOptions::default()
        )
        .unwrap()
        .is_empty());
        assert_eq!(
            split_specs(
                &MultiGraph::bouquet(2),
                VertexId(0),
                &SplitOptions::permissive()
            )
            .unwrap()
            .len(),
            7
        );
    }

    #[test]
    fn split_spec_json() {
        let spec = SplitSpec::new(
            VertexId(3),
            [EdgeEnd {
                edge: EdgeId(4),
                end: 1,
            }],
        );
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"vertex":3,"sideA":[[4,1]]}"#);
        assert_eq!(serde_json::from_str::<SplitSpec>(&text).unwrap(), spec);
    }
}
