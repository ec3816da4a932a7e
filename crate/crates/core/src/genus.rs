//! Deficiency, maximum genus and splitting trees.
//!
//! For a spanning tree `T` of a connected graph `G`, the co-tree graph
//! `G - E(T)` keeps every vertex and the edges outside `T`. Its deficiency
//! `xi(G, T)` is the number of co-tree components with an odd number of
//! edges, and `xi(G)` is the minimum over all spanning trees. The maximum
//! genus is `(beta(G) - xi(G)) / 2`, so `G` is upper embeddable exactly when
//! some tree leaves at most one odd co-tree component. Such a tree is a
//! *splitting tree*.
//!
//! Exact answers come from exhaustive spanning-tree enumeration, so every
//! exact entry point takes an [`EnumerationGuard`] capping the edge count.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dense, EdgeId, MultiGraph, UnionFind, VertexId};

pub const DEFAULT_EDGE_CAP: usize = 30;

/// Upper bound on the edge count accepted by the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub max_edges: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard {
            max_edges: DEFAULT_EDGE_CAP,
        }
    }
}

impl EnumerationGuard {
    pub fn with_cap(max_edges: usize) -> Self {
        EnumerationGuard { max_edges }
    }

    pub fn unlimited() -> Self {
        EnumerationGuard {
            max_edges: usize::MAX,
        }
    }

    pub fn check(&self, g: &MultiGraph) -> Result<()> {
        if g.edge_count() > self.max_edges {
            Err(Error::GuardExceeded {
                edges: g.edge_count(),
                cap: self.max_edges,
            })
        } else {
            Ok(())
        }
    }
}

/// A set of edge ids, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpanningTree(Vec<EdgeId>);

impl SpanningTree {
    /// Wraps an edge set without validating it against any graph.
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut v: Vec<EdgeId> = edges.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SpanningTree(v)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that the edge set is a spanning tree of `g`.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let d = Dense::new(g);
        if self.0.len() + 1 != d.n {
            return Err(Error::NotSpanningTree(format!(
                "{} edges for {} vertices",
                self.0.len(),
                d.n
            )));
        }
        let mut uf = UnionFind::new(d.n);
        for &e in &self.0 {
            let edge = g.edge(e)?;
            if edge.is_loop() {
                return Err(Error::NotSpanningTree(format!("edge {e} is a loop")));
            }
            if !uf.union(d.index(edge.u), d.index(edge.w)) {
                return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub tree: SpanningTree,
    pub xi_of_tree: usize,
    /// Edge counts of the co-tree components that carry at least one edge,
    /// ordered by smallest vertex.
    pub component_sizes: Vec<usize>,
}

impl DeficiencyReport {
    pub fn odd_components(&self) -> usize {
        self.component_sizes.iter().filter(|&&s| s % 2 == 1).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub betti: usize,
    /// Exact deficiency, or an upper bound on it in heuristic mode.
    pub xi: usize,
    /// `(betti - xi) / 2`; a lower bound in heuristic mode.
    pub max_genus: usize,
    /// In heuristic mode `true` is certified by the witness, `false` only
    /// means no splitting tree was found.
    pub upper_embeddable: bool,
    pub witness: Option<SpanningTree>,
    pub mode: Mode,
}

impl GenusReport {
    fn new(betti: usize, xi: usize, witness: Option<SpanningTree>, mode: Mode) -> Self {
        GenusReport {
            betti,
            xi,
            max_genus: (betti - xi) / 2,
            upper_embeddable: xi <= 1,
            witness,
            mode,
        }
    }
}

/// Deficiency of a given spanning tree.
pub fn deficiency(g: &MultiGraph, t: &SpanningTree) -> Result<DeficiencyReport> {
    t.validate(g)?;
    let d = Dense::new(g);
    let in_tree: Vec<bool> = d.edges.iter().map(|&(id, _, _)| t.contains(id)).collect();
    let (xi, sizes) = cotree_profile(&d, &in_tree);
    Ok(DeficiencyReport {
        tree: t.clone(),
        xi_of_tree: xi,
        component_sizes: sizes,
    })
}

fn cotree_profile(d: &Dense, in_tree: &[bool]) -> (usize, Vec<usize>) {
    let mut uf = UnionFind::new(d.n);
    for (k, &(_, a, b)) in d.edges.iter().enumerate() {
        if !in_tree[k] {
            uf.union(a, b);
        }
    }
    let mut counts = vec![0usize; d.n];
    for (k, &(_, a, _)) in d.edges.iter().enumerate() {
        if !in_tree[k] {
            counts[uf.find(a)] += 1;
        }
    }
    let mut seen = vec![false; d.n];
    let mut sizes = Vec::new();
    for v in 0..d.n {
        let r = uf.find(v);
        if !seen[r] {
            seen[r] = true;
            if counts[r] > 0 {
                sizes.push(counts[r]);
            }
        }
    }
    let xi = sizes.iter().filter(|&&s| s % 2 == 1).count();
    (xi, sizes)
}

/// Number of odd co-tree components, using a scratch union-find.
fn cotree_xi(d: &Dense, in_tree: &[bool], uf: &mut UnionFind, counts: &mut [usize]) -> usize {
    *uf = UnionFind::new(d.n);
    for (k, &(_, a, b)) in d.edges.iter().enumerate() {
        if !in_tree[k] {
            uf.union(a, b);
        }
    }
    counts.iter_mut().for_each(|c| *c = 0);
    for (k, &(_, a, _)) in d.edges.iter().enumerate() {
        if !in_tree[k] {
            counts[uf.find(a)] += 1;
        }
    }
    counts.iter().filter(|&&c| c % 2 == 1).count()
}

/// Union-find with rollback: union by size, no path compression.
struct RollbackUf {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        RollbackUf {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push((ra, rb));
    }

    fn rollback(&mut self) {
        let (ra, rb) = self.history.pop().expect("rollback without union");
        self.parent[rb] = rb;
        self.size[ra] -= self.size[rb];
    }
}

struct Enumerator<'a, F> {
    d: &'a Dense,
    /// Indices into `d.edges` of the non-loop edges, in id order.
    candidates: Vec<usize>,
    uf: RollbackUf,
    in_tree: Vec<bool>,
    chosen: usize,
    visit: F,
}

impl<F: FnMut(&[bool]) -> ControlFlow<()>> Enumerator<'_, F> {
    fn run(&mut self, pos: usize) -> ControlFlow<()> {
        if self.chosen + 1 == self.d.n {
            return (self.visit)(&self.in_tree);
        }
        let Some(&k) = self.candidates.get(pos) else {
            unreachable!("connectivity invariant guarantees completion");
        };
        let (_, a, b) = self.d.edges[k];
        let can_include = self.uf.find(a) != self.uf.find(b);
        if can_include {
            self.uf.union(a, b);
            self.in_tree[k] = true;
            self.chosen += 1;
            let flow = self.run(pos + 1);
            self.chosen -= 1;
            self.in_tree[k] = false;
            self.uf.rollback();
            flow?;
            // a bridge of the remaining graph must be in every tree
            if self.is_bridge(pos, a, b) {
                return ControlFlow::Continue(());
            }
        }
        self.run(pos + 1)
    }

    /// Whether the candidate at `pos` is the only link between the current
    /// tree components of its endpoints, given the undecided edges after it.
    fn is_bridge(&self, pos: usize, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.uf.find(a), self.uf.find(b));
        let n = self.d.n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &k in &self.candidates[pos + 1..] {
            let (_, x, y) = self.d.edges[k];
            let (rx, ry) = (self.uf.find(x), self.uf.find(y));
            if rx != ry {
                adj[rx].push(ry);
                adj[ry].push(rx);
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([ra]);
        seen[ra] = true;
        while let Some(x) = queue.pop_front() {
            if x == rb {
                return false;
            }
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        true
    }
}

fn enumerate_dense(
    g: &MultiGraph,
    guard: &EnumerationGuard,
    visit: impl FnMut(&Dense, &[bool]) -> ControlFlow<()>,
) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    guard.check(g)?;
    let d = Dense::new(g);
    let candidates = (0..d.edges.len())
        .filter(|&k| d.edges[k].1 != d.edges[k].2)
        .collect();
    let mut visit = visit;
    let dref = &d;
    let mut e = Enumerator {
        d: dref,
        candidates,
        uf: RollbackUf::new(d.n),
        in_tree: vec![false; d.edges.len()],
        chosen: 0,
        visit: |in_tree: &[bool]| visit(dref, in_tree),
    };
    let _ = e.run(0);
    Ok(())
}

fn tree_from_mask(d: &Dense, in_tree: &[bool]) -> SpanningTree {
    SpanningTree(
        d.edges
            .iter()
            .zip(in_tree)
            .filter(|(_, &t)| t)
            .map(|(&(id, _, _), _)| id)
            .collect(),
    )
}

/// Calls `visit` once per spanning tree, in a fixed order: trees are
/// enumerated by deciding edges in ascending id, taking each edge before
/// skipping it. Returning `Break` stops the enumeration.
pub fn for_each_spanning_tree(
    g: &MultiGraph,
    guard: &EnumerationGuard,
    mut visit: impl FnMut(&SpanningTree) -> ControlFlow<()>,
) -> Result<()> {
    enumerate_dense(g, guard, |d, mask| visit(&tree_from_mask(d, mask)))
}

/// Every spanning tree, in enumeration order.
pub fn spanning_trees(g: &MultiGraph, guard: &EnumerationGuard) -> Result<Vec<SpanningTree>> {
    let mut out = Vec::new();
    for_each_spanning_tree(g, guard, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Minimum deficiency over all spanning trees, with the first tree that
/// attains it. Stops early once the parity floor `beta mod 2` is reached.
pub fn xi(g: &MultiGraph, guard: &EnumerationGuard) -> Result<(usize, SpanningTree)> {
    let floor = g.betti()? % 2;
    let mut best: Option<(usize, SpanningTree)> = None;
    let mut uf = UnionFind::new(0);
    let mut counts = Vec::new();
    enumerate_dense(g, guard, |d, mask| {
        if counts.len() != d.n {
            counts = vec![0; d.n];
        }
        let x = cotree_xi(d, mask, &mut uf, &mut counts);
        if best.as_ref().is_none_or(|(b, _)| x < *b) {
            best = Some((x, tree_from_mask(d, mask)));
        }
        if x <= floor {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(best.expect("a connected graph has a spanning tree"))
}

/// The first spanning tree in enumeration order with at most one odd
/// co-tree component.
pub fn find_splitting_tree(
    g: &MultiGraph,
    guard: &EnumerationGuard,
) -> Result<Option<SpanningTree>> {
    let mut found = None;
    let mut uf = UnionFind::new(0);
    let mut counts = Vec::new();
    enumerate_dense(g, guard, |d, mask| {
        if counts.len() != d.n {
            counts = vec![0; d.n];
        }
        if cotree_xi(d, mask, &mut uf, &mut counts) <= 1 {
            found = Some(tree_from_mask(d, mask));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

pub fn is_upper_embeddable(g: &MultiGraph, guard: &EnumerationGuard) -> Result<bool> {
    Ok(find_splitting_tree(g, guard)?.is_some())
}

/// Exact maximum genus.
pub fn max_genus(g: &MultiGraph, guard: &EnumerationGuard) -> Result<GenusReport> {
    let betti = g.betti()?;
    let (x, tree) = xi(g, guard)?;
    Ok(GenusReport::new(betti, x, Some(tree), Mode::Exact))
}

/// How [`genus_report`] should obtain the deficiency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exact(EnumerationGuard),
    Heuristic {
        effort: usize,
        seed: u64,
    },
    /// Exact when the guard allows it, heuristic otherwise.
    Auto {
        guard: EnumerationGuard,
        effort: usize,
        seed: u64,
    },
}

pub fn genus_report(g: &MultiGraph, strategy: Strategy) -> Result<GenusReport> {
    match strategy {
        Strategy::Exact(guard) => max_genus(g, &guard),
        Strategy::Heuristic { effort, seed } => heuristic_report(g, effort, seed),
        Strategy::Auto {
            guard,
            effort,
            seed,
        } => match guard.check(g) {
            Ok(()) => max_genus(g, &guard),
            Err(_) => heuristic_report(g, effort, seed),
        },
    }
}

fn heuristic_report(g: &MultiGraph, effort: usize, seed: u64) -> Result<GenusReport> {
    let betti = g.betti()?;
    let h = xi_heuristic(g, effort, seed)?;
    Ok(GenusReport::new(betti, h.xi, Some(h.tree), Mode::Heuristic))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicXi {
    pub xi: usize,
    pub tree: SpanningTree,
    pub iterations: usize,
}

/// Upper bound on `xi(G)` by randomised local search over spanning trees.
///
/// Starts from a random spanning tree and repeatedly exchanges a co-tree
/// edge with a tree edge on its fundamental cycle, keeping moves that do
/// not increase the deficiency. Deterministic for a fixed `seed`.
pub fn xi_heuristic(g: &MultiGraph, effort: usize, seed: u64) -> Result<HeuristicXi> {
    let floor = g.betti()? % 2;
    let d = Dense::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..d.edges.len()).collect();
    order.shuffle(&mut rng);
    let mut in_tree = vec![false; d.edges.len()];
    let mut uf = UnionFind::new(d.n);
    for &k in &order {
        let (_, a, b) = d.edges[k];
        if a != b && uf.union(a, b) {
            in_tree[k] = true;
        }
    }
    let mut counts = vec![0; d.n];
    let mut current = cotree_xi(&d, &in_tree, &mut uf, &mut counts);
    let mut best = (current, in_tree.clone());
    let cotree_nonloop: Vec<usize> = (0..d.edges.len())
        .filter(|&k| d.edges[k].1 != d.edges[k].2)
        .collect();
    let mut iterations = 0;
    while iterations < effort && best.0 > floor {
        iterations += 1;
        let candidates: Vec<usize> = cotree_nonloop
            .iter()
            .copied()
            .filter(|&k| !in_tree[k])
            .collect();
        let Some(&enter) = candidates.choose(&mut rng) else {
            break;
        };
        let cycle = tree_path(&d, &in_tree, d.edges[enter].1, d.edges[enter].2);
        let leave = cycle[rng.gen_range(0..cycle.len())];
        in_tree[enter] = true;
        in_tree[leave] = false;
        let next = cotree_xi(&d, &in_tree, &mut uf, &mut counts);
        if next <= current {
            current = next;
            if next < best.0 {
                best = (next, in_tree.clone());
            }
        } else {
            in_tree[enter] = false;
            in_tree[leave] = true;
        }
    }
    Ok(HeuristicXi {
        xi: best.0,
        tree: tree_from_mask(&d, &best.1),
        iterations,
    })
}

/// Edge indices on the tree path between dense vertices `s` and `t`.
fn tree_path(d: &Dense, in_tree: &[bool], s: usize, t: usize) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.n];
    for (k, &(_, a, b)) in d.edges.iter().enumerate() {
        if in_tree[k] {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
    }
    let mut via = vec![usize::MAX; d.n];
    let mut seen = vec![false; d.n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &(y, k) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = k;
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = t;
    while x != s {
        let k = via[x];
        path.push(k);
        let (_, a, b) = d.edges[k];
        x = if a == x { b } else { a };
    }
    path.reverse();
    path
}

/// Rebuilds a splitting tree so that it holds one edge from `v` to each
/// neighbour of `v`.
///
/// For each neighbour `u` (ascending) whose selected edge (the lowest-id
/// edge joining `v` and `u`) is missing from the tree, the last edge of the
/// tree path from `v` to `u` is exchanged for it. Requires `t` to be a
/// splitting tree, `deg(v) >= 3`, no loop at `v` and a connected, non-empty
/// local subgraph at `v`.
pub fn retree_around_vertex(g: &MultiGraph, t: &SpanningTree, v: VertexId) -> Result<SpanningTree> {
    let before = deficiency(g, t)?;
    if before.xi_of_tree > 1 {
        return Err(Error::Precondition(format!(
            "input tree has deficiency {} and is not a splitting tree",
            before.xi_of_tree
        )));
    }
    let degree = g.degree(v)?;
    if degree < 3 {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {degree}, need at least 3"
        )));
    }
    if let Some(e) = g.incident(v).find(|e| e.is_loop()) {
        return Err(Error::Precondition(format!(
            "vertex {v} carries loop {}; the exchange argument needs a loop-free vertex",
            e.id
        )));
    }
    if !g.local_subgraph(v)?.is_connected() {
        return Err(Error::Precondition(format!(
            "local subgraph at {v} is empty or disconnected"
        )));
    }
    let selected = selected_edges(g, v);
    let d = Dense::new(g);
    let pos: BTreeMap<EdgeId, usize> = d
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(id, _, _))| (id, k))
        .collect();
    let mut in_tree: Vec<bool> = d.edges.iter().map(|&(id, _, _)| t.contains(id)).collect();
    let dv = d.index(v);
    for (&u, &e) in &selected {
        let k = pos[&e];
        if in_tree[k] {
            continue;
        }
        let path = tree_path(&d, &in_tree, dv, d.index(u));
        let last = *path
            .last()
            .expect("distinct vertices have a non-empty path");
        in_tree[last] = false;
        in_tree[k] = true;
    }
    Ok(tree_from_mask(&d, &in_tree))
}

/// Lowest-id edge from `v` to each neighbour.
pub fn selected_edges(g: &MultiGraph, v: VertexId) -> BTreeMap<VertexId, EdgeId> {
    let mut out = BTreeMap::new();
    for e in g.incident(v).filter(|e| !e.is_loop()) {
        out.entry(e.other(v).unwrap()).or_insert(e.id);
    }
    out
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free
/// elimination). `None` if an intermediate value overflows.
pub fn count_spanning_trees(g: &MultiGraph) -> Option<u128> {
    let d = Dense::new(g);
    if d.n == 0 {
        return Some(0);
    }
    if d.n == 1 {
        return Some(1);
    }
    let m = d.n - 1;
    let mut lap = vec![vec![0i128; d.n]; d.n];
    for &(_, a, b) in &d.edges {
        if a != b {
            lap[a][a] += 1;
            lap[b][b] += 1;
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    // drop the last row and column
    let mut a: Vec<Vec<i128>> = lap.into_iter().take(m).map(|r| r[..m].to_vec()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    let det = sign * a[m - 1][m - 1];
    u128::try_from(det).ok()
}

/// Subdivides edge `e` with a new vertex, keeping all ids; the second half
/// of the edge gets a fresh edge id.
pub fn subdivide(g: &MultiGraph, e: EdgeId) -> Result<MultiGraph> {
    let edge = *g.edge(e)?;
    let mid = g.fresh_vertex_id();
    let extra = g.fresh_edge_id();
    let mut vertices: BTreeSet<VertexId> = g.vertices().iter().copied().collect();
    vertices.insert(mid);
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .map(|x| {
            if x.id == e {
                (x.id, edge.u, mid)
            } else {
                (x.id, x.u, x.w)
            }
        })
        .collect();
    edges.push((extra, mid, edge.w));
    MultiGraph::from_parts(vertices, edges)
}
