//! Exact isomorphism for small multigraphs.
//!
//! Canonical forms come from colour refinement followed by individualisation
//! and backtracking over the remaining ties, keeping the lexicographically
//! smallest multiplicity matrix. Cost grows with the automorphism group, so
//! canonical forms are only computed up to [`MAX_CANONICAL_VERTICES`].

use std::fmt;

use crate::graph::{Dense, MultiGraph};

pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Upper triangle (diagonal included) of the edge-multiplicity matrix under
/// a canonical vertex order. Diagonal entries count loops.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: Vec<u16>,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.order)?;
        for c in &self.code {
            write!(f, ".{c}")?;
        }
        Ok(())
    }
}

/// Colour, loop count, and sorted (colour, multiplicity) of the neighbours.
type Signature = (usize, u16, Vec<(usize, u16)>);

struct Matrix {
    n: usize,
    mult: Vec<u16>,
}

impl Matrix {
    fn new(g: &MultiGraph) -> Matrix {
        let d = Dense::new(g);
        let n = d.n;
        let mut mult = vec![0u16; n * n];
        for &(_, a, b) in &d.edges {
            mult[a * n + b] += 1;
            if a != b {
                mult[b * n + a] += 1;
            }
        }
        Matrix { n, mult }
    }

    fn at(&self, a: usize, b: usize) -> u16 {
        self.mult[a * self.n + b]
    }
}

/// Refines `colors` to the coarsest equitable partition below it. Colours
/// are renamed to ranks of their signatures, so the result does not depend
/// on vertex labels.
fn refine(m: &Matrix, mut colors: Vec<usize>) -> Vec<usize> {
    let n = m.n;
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u16)> = (0..n)
                    .filter(|&u| u != v && m.at(v, u) > 0)
                    .map(|u| (colors[u], m.at(v, u)))
                    .collect();
                nb.sort_unstable();
                (colors[v], m.at(v, v), nb)
            })
            .collect();
        let mut distinct: Vec<&Signature> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let now = distinct.len();
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn code_for(m: &Matrix, colors: &[usize]) -> Vec<u16> {
    let n = m.n;
    let mut at = vec![0; n];
    for (v, &c) in colors.iter().enumerate() {
        at[c] = v;
    }
    let mut code = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            code.push(m.at(at[i], at[j]));
        }
    }
    code
}

fn search(m: &Matrix, colors: Vec<usize>, best: &mut Option<Vec<u16>>) {
    let n = m.n;
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
        let code = code_for(m, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + usize::from(!(c == target && u == v)))
            .collect();
        search(m, refine(m, split), best);
    }
}

/// Canonical form, or `None` above [`MAX_CANONICAL_VERTICES`] vertices.
pub fn canonical_form(g: &MultiGraph) -> Option<CanonicalForm> {
    if g.vertex_count() > MAX_CANONICAL_VERTICES {
        return None;
    }
    Some(canonical_form_unbounded(g))
}

/// Canonical form without the size limit. Exponential on highly symmetric
/// graphs.
pub fn canonical_form_unbounded(g: &MultiGraph) -> CanonicalForm {
    let m = Matrix::new(g);
    let colors = refine(&m, vec![0; m.n]);
    let mut best = None;
    search(&m, colors, &mut best);
    CanonicalForm {
        order: m.n,
        code: best.unwrap_or_default(),
    }
}

/// Exact isomorphism test for multigraphs with loops.
pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let degs = |g: &MultiGraph| {
        let mut d: Vec<usize> = g.vertices().iter().map(|&v| g.degree(v).unwrap()).collect();
        d.sort_unstable();
        d
    };
    if degs(a) != degs(b) {
        return false;
    }
    canonical_form_unbounded(a) == canonical_form_unbounded(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{EdgeId, VertexId};

    /// Applies a vertex relabelling and reverses the edge order.
    fn relabel(g: &MultiGraph, perm: &[u32]) -> MultiGraph {
        let n = g.fresh_edge_id().0;
        MultiGraph::from_parts(
            g.vertices().iter().map(|v| VertexId(perm[v.0 as usize])),
            g.edges().iter().map(|e| {
                (
                    EdgeId(n - 1 - e.id.0),
                    VertexId(perm[e.u.0 as usize]),
                    VertexId(perm[e.w.0 as usize]),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn relabelled_fixtures_stay_isomorphic() {
        for f in fixtures::figures() {
            let n = f.graph.vertex_count() as u32;
            let perm: Vec<u32> = (0..n).map(|i| (i * 7 + 3) % n).collect();
            // 7 is coprime to every figure order except 7 itself
            let perm = if n.is_multiple_of(7) {
                (0..n).rev().collect()
            } else {
                perm
            };
            let h = relabel(&f.graph, &perm);
            assert!(are_isomorphic(&f.graph, &h), "{}", f.name);
            if n as usize <= MAX_CANONICAL_VERTICES {
                assert_eq!(canonical_form(&f.graph), canonical_form(&h), "{}", f.name);
            }
        }
    }

    #[test]
    fn distinguishes_split_variants() {
        assert!(!are_isomorphic(
            &fixtures::fig5_g1().graph,
            &fixtures::fig6_g2().graph
        ));
        assert!(!are_isomorphic(
            &fixtures::fig7_g1().graph,
            &fixtures::fig8_g().graph
        ));
        // same degree sequence, different structure
        let c6 = MultiGraph::cycle(6);
        let two_triangles =
            MultiGraph::build(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
        // loops versus parallel edges
        let a = MultiGraph::build(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let b = MultiGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(!are_isomorphic(&a, &b));
    }

    #[test]
    fn size_limit() {
        assert!(canonical_form(&MultiGraph::cycle(11)).is_none());
        assert!(canonical_form(&MultiGraph::cycle(10)).is_some());
        assert!(canonical_form(&MultiGraph::complete(7)).is_some());
    }
}
