use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use maxgenus::genus::{
    count_spanning_trees, deficiency, find_splitting_tree, max_genus, spanning_trees, subdivide,
    xi, xi_heuristic, EnumerationGuard,
};
use maxgenus::io::{emit_json, emit_mg1, parse_json, parse_mg1};
use maxgenus::iso::are_isomorphic;
use maxgenus::random::{random_connected, RandomGraphParams};
use maxgenus::transforms::{contract_edge, split_specs, split_vertex, SplitOptions};
use maxgenus::MultiGraph;

fn graph(seed: u64, max_edges: usize) -> MultiGraph {
    let p = RandomGraphParams {
        max_edges,
        ..RandomGraphParams::default()
    };
    random_connected(&mut ChaCha8Rng::seed_from_u64(seed), &p)
}

/// Nebeský: xi(G) is the maximum over edge sets A of
/// c(G-A) + b(G-A) - |A| - 1, where c counts components and b those with
/// odd cycle rank. Exponential in |E|.
fn xi_nebesky(g: &MultiGraph) -> usize {
    let m = g.edge_count();
    let mut best = i64::MIN;
    for mask in 0u32..(1 << m) {
        let kept = g.edge_subgraph(|e| {
            let i = g.edges().iter().position(|x| x.id == e.id).unwrap();
            mask >> i & 1 == 0
        });
        let parts = kept.components();
        let c = parts.len() as i64;
        let b = parts
            .components
            .iter()
            .filter(|p| (p.edges.len() + 1 - p.vertices.len()) % 2 == 1)
            .count() as i64;
        best = best.max(c + b - mask.count_ones() as i64 - 1);
    }
    best as usize
}

fn components_after_removal(g: &MultiGraph, e: maxgenus::EdgeId) -> usize {
    g.edge_subgraph(|x| x.id != e).components().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handshake(seed in any::<u64>()) {
        let g = graph(seed, 12);
        let total: usize = g.vertices().iter().map(|&v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn formats_round_trip(seed in any::<u64>()) {
        let g = graph(seed, 12);
        prop_assert_eq!(&parse_mg1(&emit_mg1(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_json(&emit_json(&g)).unwrap(), &g);
    }

    #[test]
    fn cut_edges_match_brute_force(seed in any::<u64>()) {
        let g = graph(seed, 12);
        for e in g.edges() {
            prop_assert_eq!(g.is_cut_edge(e.id).unwrap(), components_after_removal(&g, e.id) > 1);
        }
    }

    #[test]
    fn xi_matches_nebesky(seed in any::<u64>()) {
        let g = graph(seed, 10);
        let (x, t) = xi(&g, &EnumerationGuard::default()).unwrap();
        prop_assert_eq!(x, xi_nebesky(&g));
        prop_assert_eq!(deficiency(&g, &t).unwrap().xi_of_tree, x);
    }

    #[test]
    fn deficiency_consistency(seed in any::<u64>()) {
        let g = graph(seed, 12);
        let guard = EnumerationGuard::default();
        let r = max_genus(&g, &guard).unwrap();
        prop_assert_eq!(r.xi % 2, r.betti % 2);
        prop_assert_eq!(r.upper_embeddable, find_splitting_tree(&g, &guard).unwrap().is_some());
        prop_assert_eq!(2 * r.max_genus + r.xi, r.betti);
    }

    #[test]
    fn tree_counts_agree(seed in any::<u64>()) {
        let g = graph(seed, 12);
        let n = spanning_trees(&g, &EnumerationGuard::default()).unwrap().len() as u128;
        prop_assert_eq!(count_spanning_trees(&g), Some(n));
    }

    #[test]
    fn heuristic_bounds_exact(seed in any::<u64>(), h in 0u64..4) {
        let g = graph(seed, 12);
        let (x, _) = xi(&g, &EnumerationGuard::default()).unwrap();
        let hx = xi_heuristic(&g, 50, h).unwrap().xi;
        prop_assert!(hx >= x);
        prop_assert_eq!(hx % 2, x % 2);
    }

    #[test]
    fn splits_and_contractions_keep_betti(seed in any::<u64>()) {
        let g = graph(seed, 12);
        let beta = g.betti().unwrap();
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            prop_assert_eq!(contract_edge(&g, e.id).unwrap().graph.betti().unwrap(), beta);
        }
        for &v in g.vertices() {
            for spec in split_specs(&g, v, &SplitOptions::permissive()).unwrap().iter().take(8) {
                let r = split_vertex(&g, spec, &SplitOptions::permissive()).unwrap();
                prop_assert_eq!(r.graph.betti().unwrap(), beta);
                let back = contract_edge(&r.graph, r.splitting_edge).unwrap().graph;
                prop_assert_eq!(&back, &g);
                prop_assert!(are_isomorphic(&back, &g));
            }
        }
    }

    #[test]
    fn subdivision_keeps_xi(seed in any::<u64>()) {
        let g = graph(seed, 10);
        let guard = EnumerationGuard::default();
        let (x, _) = xi(&g, &guard).unwrap();
        for e in g.edges() {
            let s = subdivide(&g, e.id).unwrap();
            prop_assert_eq!(s.betti().unwrap(), g.betti().unwrap());
            prop_assert_eq!(xi(&s, &guard).unwrap().0, x);
        }
    }
}
