//! Seeded random multigraphs for property checks and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::MultiGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomGraphParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Minimum vertex degree to reach; loops count twice.
    pub min_degree: usize,
    pub loops: bool,
    pub parallel_edges: bool,
    /// Extra edges beyond the minimum are added with this probability per
    /// round.
    pub extra_edge_prob: f64,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            min_vertices: 2,
            max_vertices: 7,
            max_edges: 12,
            min_degree: 3,
            loops: true,
            parallel_edges: true,
            extra_edge_prob: 0.5,
        }
    }
}

impl RandomGraphParams {
    pub fn simple(mut self) -> Self {
        self.loops = false;
        self.parallel_edges = false;
        self
    }
}

/// A connected multigraph satisfying `params`. Retries until one fits; the
/// parameters must be satisfiable.
pub fn random_connected<R: Rng>(rng: &mut R, params: &RandomGraphParams) -> MultiGraph {
    loop {
        if let Some(g) = attempt(rng, params) {
            return g;
        }
    }
}

fn attempt<R: Rng>(rng: &mut R, p: &RandomGraphParams) -> Option<MultiGraph> {
    let n = rng.gen_range(p.min_vertices..=p.max_vertices);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    let mut deg = vec![0usize; n];
    for &(a, b) in &edges {
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    let mut tries = 0;
    loop {
        tries += 1;
        if tries > 200 || edges.len() > p.max_edges {
            return None;
        }
        let short: Vec<u32> = (0..n as u32)
            .filter(|&v| deg[v as usize] < p.min_degree)
            .collect();
        if short.is_empty() && !rng.gen_bool(p.extra_edge_prob) {
            break;
        }
        let a = if short.is_empty() {
            rng.gen_range(0..n as u32)
        } else {
            *short.choose(rng).unwrap()
        };
        let b = rng.gen_range(0..n as u32);
        if a == b && !p.loops {
            continue;
        }
        let exists = edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
        if a != b && exists && !p.parallel_edges {
            continue;
        }
        edges.push((a, b));
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    if edges.len() > p.max_edges {
        return None;
    }
    edges.shuffle(rng);
    MultiGraph::build(n, &edges).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = RandomGraphParams::default();
        for _ in 0..200 {
            let g = random_connected(&mut rng, &p);
            assert!(g.is_connected());
            assert!(g.edge_count() <= 12 && g.vertex_count() <= 7);
            assert!(g.min_degree().unwrap() >= 3);
        }
        let s = p.simple();
        for _ in 0..50 {
            let g = random_connected(&mut rng, &s);
            assert!(g.edges().iter().all(|e| !e.is_loop()));
            let mut pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.w)).collect();
            pairs.sort();
            pairs.dedup();
            assert_eq!(pairs.len(), g.edge_count());
        }
    }

    #[test]
    fn seeded_output_is_stable() {
        let p = RandomGraphParams::default();
        let a = random_connected(&mut ChaCha8Rng::seed_from_u64(9), &p);
        let b = random_connected(&mut ChaCha8Rng::seed_from_u64(9), &p);
        assert_eq!(a, b);
    }
}
