//! Counterexamples showing why loops at the vertex in question are excluded
//! from the splitting, tree-exchange and contraction rules. Each one fails
//! the rule's conclusion when the rule is read literally.

use std::collections::BTreeSet;

use maxgenus::genus::{
    deficiency, is_upper_embeddable, retree_around_vertex, selected_edges, spanning_trees, xi,
    EnumerationGuard, SpanningTree,
};
use maxgenus::io::parse_mg1;
use maxgenus::transforms::{
    contract_edge, edge_local_subgraph, ends_at, is_flexible_edge, is_type1_flexible, split_specs,
    split_vertex, Finding, SplitOptions,
};
use maxgenus::{EdgeId, Error, MultiGraph, VertexId};

fn guard() -> EnumerationGuard {
    EnumerationGuard::default()
}

fn ue(g: &MultiGraph) -> bool {
    is_upper_embeddable(g, &guard()).unwrap()
}

#[test]
fn star_tree_at_a_loop_vertex_can_be_worse() {
    let g =
        parse_mg1("v 0\nv 1\nv 2\ne 0 1 2\ne 1 0 1\ne 2 0 0\ne 3 1 2\ne 4 1 1\ne 5 0 2\n").unwrap();
    let v = VertexId(0);
    assert_eq!(g.degree(v).unwrap(), 4);
    assert!(g.local_subgraph(v).unwrap().is_connected());
    let (x, t) = xi(&g, &guard()).unwrap();
    assert_eq!(x, 0);

    // every tree holding one edge to each neighbour of v is worse than t
    let sel: Vec<EdgeId> = selected_edges(&g, v).into_values().collect();
    let best = spanning_trees(&g, &guard())
        .unwrap()
        .into_iter()
        .filter(|t| sel.iter().all(|&e| t.contains(e)))
        .map(|t| deficiency(&g, &t).unwrap().xi_of_tree)
        .min();
    assert_eq!(best, Some(2));

    let err = retree_around_vertex(&g, &t, v).unwrap_err();
    assert!(matches!(err, Error::Precondition(ref m) if m.contains("loop")));
}

#[test]
fn contraction_next_to_a_loop_can_create_upper_embeddability() {
    let g = parse_mg1("v 0\nv 1\nv 2\ne 0 0 0\ne 1 1 2\ne 2 1 1\ne 3 2 2\ne 4 0 2\n").unwrap();
    let e = EdgeId(1);
    // condition II read literally: connected local subgraph, merged degree 5
    assert!(edge_local_subgraph(&g, e).unwrap().is_connected());
    assert_eq!(
        g.degree(VertexId(1)).unwrap() + g.degree(VertexId(2)).unwrap() - 2,
        5
    );
    let h = contract_edge(&g, e).unwrap().graph;
    assert!(!ue(&g));
    assert!(ue(&h));

    let v = is_flexible_edge(&g, e).unwrap();
    assert!(!v.flexible);
    assert!(v
        .evidence
        .iter()
        .any(|ev| ev.finding == Finding::LoopFree(false) && ev.reproduces()));
}

/// Splits at a type-I vertex carrying loops, one per straddling pattern.
fn loop_splits(g: &MultiGraph, v: VertexId) -> (Vec<bool>, Vec<bool>) {
    let before = ue(g);
    let mut straddling = Vec::new();
    let mut whole = Vec::new();
    for spec in split_specs(g, v, &SplitOptions::permissive()).unwrap() {
        let h = split_vertex(g, &spec, &SplitOptions::permissive())
            .unwrap()
            .graph;
        let same = ue(&h) == before;
        if spec.loops_straddle(g) {
            straddling.push(same);
        } else {
            whole.push(same);
        }
    }
    (straddling, whole)
}

#[test]
fn type1_split_keeping_a_loop_whole_can_break_the_verdict() {
    // K4 with a loop at vertex 0: type-I flexible there
    let mut edges: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 0)];
    let g = MultiGraph::build(4, &edges).unwrap();
    let v = VertexId(0);
    assert!(is_type1_flexible(&g, v).unwrap().flexible);
    let (straddling, whole) = loop_splits(&g, v);
    assert!(straddling.iter().all(|&s| s));
    let flipped = whole.iter().filter(|&&s| !s).count();

    // a second loop gives more room; report both, require at least one flip
    edges.push((0, 0));
    let g2 = MultiGraph::build(4, &edges).unwrap();
    let (straddling2, whole2) = loop_splits(&g2, v);
    assert!(straddling2.iter().all(|&s| s));
    let flipped2 = whole2.iter().filter(|&&s| !s).count();
    eprintln!(
        "non-straddling splits that flip the verdict: {flipped}/{} and {flipped2}/{}",
        whole.len(),
        whole2.len()
    );
    assert!(flipped + flipped2 > 0);
}

#[test]
fn edge_ends_of_a_loop_are_distinct() {
    let g = MultiGraph::bouquet(2);
    let ends: BTreeSet<_> = ends_at(&g, VertexId(0)).into_iter().collect();
    assert_eq!(ends.len(), 4);
    let t = SpanningTree::new([]);
    assert_eq!(deficiency(&g, &t).unwrap().xi_of_tree, 0);
}
