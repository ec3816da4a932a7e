//! Undirected multigraphs with loops and parallel edges.
//!
//! A [`MultiGraph`] is an immutable value. Vertex and edge identifiers are
//! opaque integers chosen by whoever builds the graph; transformations in
//! [`crate::transforms`] keep them stable wherever they can and report any
//! renaming through explicit id maps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An edge with its endpoints stored in ascending order. `u == w` is a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub w: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.w
    }

    /// The endpoint opposite to `v`, or `None` if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if self.u == v {
            Some(self.w)
        } else if self.w == v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.u == v || self.w == v
    }

    /// Endpoint by end index (0 is `u`, 1 is `w`).
    pub fn end(&self, index: u8) -> VertexId {
        if index == 0 {
            self.u
        } else {
            self.w
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Component {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Connected components, ordered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Component>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.components.iter().map(Component::edge_count).collect()
    }
}

impl MultiGraph {
    /// Builds a graph from explicit ids. Endpoint pairs may be given in either
    /// order.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        let mut es = Vec::new();
        for (index, (id, a, b)) in edges.into_iter().enumerate() {
            for x in [a, b] {
                if vs.binary_search(&x).is_err() {
                    return Err(Error::DanglingEndpoint { index, vertex: x });
                }
            }
            es.push(Edge {
                id,
                u: a.min(b),
                w: a.max(b),
            });
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateEdge(w[0].id));
        }
        Ok(Self {
            vertices: vs,
            edges: es,
        })
    }

    /// Vertices `0..vertex_count`, edges numbered from 0 in input order.
    pub fn build(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::from_parts(
            (0..vertex_count as u32).map(VertexId),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (EdgeId(i as u32), VertexId(a), VertexId(b))),
        )
    }

    /// One vertex carrying `n` loops.
    pub fn bouquet(n: usize) -> Self {
        Self::build(1, &vec![(0, 0); n]).expect("bouquet is well formed")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::build(2, &[(0, 1), (0, 1), (0, 1)]).expect("theta is well formed")
    }

    pub fn complete(n: usize) -> Self {
        let mut es = Vec::new();
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                es.push((a, b));
            }
        }
        Self::build(n, &es).expect("complete graph is well formed")
    }

    /// The cycle on `n` vertices. `cycle(1)` is a single loop and `cycle(2)`
    /// a digon.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 1, "cycle needs at least one vertex");
        let es: Vec<_> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Self::build(n, &es).expect("cycle is well formed")
    }

    /// Hub `0` joined to every vertex of the rim cycle `1..=n`.
    pub fn wheel(n: usize) -> Self {
        assert!(n >= 3, "wheel needs a rim of at least three vertices");
        let n32 = n as u32;
        let mut es: Vec<_> = (1..=n32).map(|i| (i, i % n32 + 1)).collect();
        es.extend((1..=n32).map(|i| (0, i)));
        Self::build(n + 1, &es).expect("wheel is well formed")
    }

    pub fn path(n: usize) -> Self {
        let es: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Self::build(n, &es).expect("path is well formed")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges
            .binary_search_by_key(&e, |x| x.id)
            .map(|i| &self.edges[i])
            .map_err(|_| Error::UnknownEdge(e))
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Smallest id not used by any vertex.
    pub fn fresh_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.last().map_or(0, |v| v.0 + 1))
    }

    pub fn fresh_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0))
    }

    /// Edges incident to `v` in id order; a loop is listed once.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    /// Number of edge-ends at `v`. Loops count twice.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    pub(crate) fn degree_unchecked(&self, v: VertexId) -> usize {
        self.incident(v)
            .map(|e| if e.is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices
            .iter()
            .map(|&v| self.degree_unchecked(v))
            .min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.vertices
            .iter()
            .map(|&v| self.degree_unchecked(v))
            .max()
    }

    /// Distinct vertices sharing a non-loop edge with `v`. Never contains `v`.
    pub fn neighbors(&self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        self.check_vertex(v)?;
        Ok(self.neighbors_unchecked(v))
    }

    pub(crate) fn neighbors_unchecked(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident(v)
            .filter(|e| !e.is_loop())
            .filter_map(|e| e.other(v))
            .collect()
    }

    /// The subgraph on `s` with every edge whose endpoints both lie in `s`.
    /// Vertices of `s` that are not in the graph are ignored.
    pub fn induced_subgraph(&self, s: &BTreeSet<VertexId>) -> MultiGraph {
        MultiGraph {
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| s.contains(v))
                .collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| s.contains(&e.u) && s.contains(&e.w))
                .collect(),
        }
    }

    /// Same vertices, only the edges accepted by `keep`.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(&Edge) -> bool) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|e| keep(e)).collect(),
        }
    }

    pub fn components(&self) -> ComponentPartition {
        let d = Dense::new(self);
        let mut uf = UnionFind::new(d.n);
        for &(_, a, b) in &d.edges {
            uf.union(a, b);
        }
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut components: Vec<Component> = Vec::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            let r = uf.find(i);
            let slot = *by_root.entry(r).or_insert_with(|| {
                components.push(Component {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                });
                components.len() - 1
            });
            components[slot].vertices.push(v);
        }
        for (k, e) in self.edges.iter().enumerate() {
            let r = uf.find(d.edges[k].1);
            components[by_root[&r]].edges.push(e.id);
        }
        ComponentPartition { components }
    }

    /// Connected and non-empty.
    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().len() == 1
    }

    /// True iff deleting `e` increases the number of components.
    pub fn is_cut_edge(&self, e: EdgeId) -> Result<bool> {
        let edge = *self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        // A non-loop edge is a bridge iff its endpoints are disconnected
        // once it is removed.
        let d = Dense::new(self);
        let (s, t) = (d.index(edge.u), d.index(edge.w));
        let adj = d.adjacency_without(Some(e));
        Ok(!reachable(&adj, s, t))
    }

    /// |E| - |V| + 1 for a connected graph.
    pub fn betti(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertices.len())
    }

    /// Subgraph induced by the neighbourhood of `v`.
    pub fn local_subgraph(&self, v: VertexId) -> Result<MultiGraph> {
        Ok(self.induced_subgraph(&self.neighbors(v)?))
    }

    /// Every vertex has a connected, non-empty local subgraph.
    pub fn is_locally_connected(&self) -> bool {
        self.vertices.iter().all(|&v| {
            self.induced_subgraph(&self.neighbors_unchecked(v))
                .is_connected()
        })
    }
}

/// Dense re-indexing of a graph for the inner loops of the algorithms.
pub(crate) struct Dense {
    pub n: usize,
    pub ids: Vec<VertexId>,
    /// (edge id, dense u, dense w) in edge-id order.
    pub edges: Vec<(EdgeId, usize, usize)>,
}

impl Dense {
    pub fn new(g: &MultiGraph) -> Self {
        let ids = g.vertices.clone();
        let edges = g
            .edges
            .iter()
            .map(|e| {
                (
                    e.id,
                    ids.binary_search(&e.u).unwrap(),
                    ids.binary_search(&e.w).unwrap(),
                )
            })
            .collect();
        Dense {
            n: ids.len(),
            ids,
            edges,
        }
    }

    pub fn index(&self, v: VertexId) -> usize {
        self.ids.binary_search(&v).expect("vertex in graph")
    }

    pub fn adjacency_without(&self, skip: Option<EdgeId>) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(id, a, b) in &self.edges {
            if Some(id) == skip || a == b {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

pub(crate) fn reachable(adj: &[Vec<usize>], s: usize, t: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(x) = queue.pop_front() {
        if x == t {
            return true;
        }
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[u32]) -> BTreeSet<VertexId> {
        ids.iter().copied().map(VertexId).collect()
    }

    #[test]
    fn build_reports_dangling_edge_index() {
        let err = MultiGraph::build(2, &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(
            err,
            Error::DanglingEndpoint {
                index: 1,
                vertex: VertexId(2)
            }
        );
    }

    #[test]
    fn duplicate_ids_rejected() {
        let dup_v = MultiGraph::from_parts([VertexId(0), VertexId(0)], []);
        assert_eq!(dup_v.unwrap_err(), Error::DuplicateVertex(VertexId(0)));
        let dup_e = MultiGraph::from_parts(
            [VertexId(0), VertexId(1)],
            [
                (EdgeId(3), VertexId(0), VertexId(1)),
                (EdgeId(3), VertexId(1), VertexId(0)),
            ],
        );
        assert_eq!(dup_e.unwrap_err(), Error::DuplicateEdge(EdgeId(3)));
    }

    #[test]
    fn small_families() {
        let b3 = MultiGraph::bouquet(3);
        assert_eq!((b3.vertex_count(), b3.edge_count()), (1, 3));
        assert!(b3.edges().iter().all(Edge::is_loop));
        let th = MultiGraph::theta();
        assert_eq!((th.vertex_count(), th.edge_count()), (2, 3));
        let k4 = MultiGraph::complete(4);
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
    }

    #[test]
    fn degrees() {
        assert_eq!(MultiGraph::bouquet(3).degree(VertexId(0)), Ok(6));
        let k4 = MultiGraph::complete(4);
        for &v in k4.vertices() {
            assert_eq!(k4.degree(v), Ok(3));
        }
        assert_eq!(
            k4.degree(VertexId(9)),
            Err(Error::UnknownVertex(VertexId(9)))
        );
    }

    #[test]
    fn neighbors_exclude_self_and_loops() {
        assert_eq!(
            MultiGraph::theta().neighbors(VertexId(0)).unwrap(),
            vs(&[1])
        );
        assert!(MultiGraph::bouquet(3)
            .neighbors(VertexId(0))
            .unwrap()
            .is_empty());
        let g = MultiGraph::build(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(VertexId(0)).unwrap(), vs(&[1]));
        assert!(g.neighbors(VertexId(5)).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = MultiGraph::complete(4);
        let tri = k4.induced_subgraph(&vs(&[0, 1, 3]));
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        let single = MultiGraph::theta().induced_subgraph(&vs(&[0]));
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert_eq!(k4.induced_subgraph(&BTreeSet::new()).vertex_count(), 0);
        // loops survive when their vertex is kept
        let g = MultiGraph::build(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.induced_subgraph(&vs(&[0])).edge_count(), 1);
    }

    #[test]
    fn components_and_counts() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.components().len(), 1);
        let two = MultiGraph::build(2, &[]).unwrap();
        let parts = two.components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts.edge_counts(), vec![0, 0]);
    }

    #[test]
    fn cut_edges() {
        let th = MultiGraph::theta();
        for e in th.edges() {
            assert_eq!(th.is_cut_edge(e.id), Ok(false));
        }
        let p = MultiGraph::path(3);
        assert_eq!(p.is_cut_edge(EdgeId(0)), Ok(true));
        let g = MultiGraph::build(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.is_cut_edge(EdgeId(0)), Ok(false));
        assert_eq!(g.is_cut_edge(EdgeId(1)), Ok(true));
        assert_eq!(g.is_cut_edge(EdgeId(7)), Err(Error::UnknownEdge(EdgeId(7))));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(MultiGraph::bouquet(5).betti(), Ok(5));
        assert_eq!(MultiGraph::complete(4).betti(), Ok(3));
        let two = MultiGraph::build(2, &[]).unwrap();
        assert_eq!(two.betti(), Err(Error::Disconnected));
    }

    #[test]
    fn local_connectivity() {
        assert!(MultiGraph::complete(4).is_locally_connected());
        assert!(MultiGraph::wheel(4).is_locally_connected());
        assert!(!MultiGraph::cycle(5).is_locally_connected());
        // a vertex with only loops has an empty local subgraph
        assert!(!MultiGraph::bouquet(2).is_locally_connected());
    }

    #[test]
    fn wheel_shape() {
        let w = MultiGraph::wheel(4);
        assert_eq!(w.degree(VertexId(0)), Ok(4));
        assert_eq!(w.local_subgraph(VertexId(0)).unwrap().edge_count(), 4);
    }
}
