//! Flexible-weak-minor reduction and split-generated families.
//!
//! Contracting a flexible edge preserves upper-embeddability in both
//! directions, so [`flexible_weak_minor`] keeps contracting (lowest edge id
//! first) until nothing flexible remains and records what it did. The
//! reverse direction, [`generate_family`], grows upper-embeddable graphs
//! from a seed by flexible vertex splits.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus::{count_spanning_trees, max_genus, xi, EnumerationGuard, GenusReport};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::io::emit_mg1;
use crate::iso::canonical_form;
use crate::transforms::{
    contract_edge, is_flexible_edge, is_type1_flexible, is_type2_flexible_split, split_specs,
    split_vertex, Rule, SplitOptions, SplitSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    /// Edge id in the graph before this step.
    pub edge: EdgeId,
    pub rule: Rule,
    pub merged: VertexId,
    pub removed: VertexId,
    /// Old edge id to new edge id for every edge that survives the step.
    #[serde(rename = "idMap")]
    pub id_map: BTreeMap<EdgeId, EdgeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    #[serde(rename = "initialOrder")]
    pub initial_order: usize,
    #[serde(rename = "finalOrder")]
    pub final_order: usize,
    pub steps: Vec<ReductionStep>,
}

/// Contracts the lowest-id flexible edge until none is left.
pub fn flexible_weak_minor(g: &MultiGraph) -> (MultiGraph, ReductionTrace) {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some((edge, rule)) = first_flexible(&cur) {
        let c = contract_edge(&cur, edge).expect("flexible edges are non-loop edges of the graph");
        steps.push(ReductionStep {
            edge,
            rule,
            merged: c.merged,
            removed: c.removed,
            id_map: c.edge_map,
        });
        cur = c.graph;
    }
    let trace = ReductionTrace {
        initial_order: g.vertex_count(),
        final_order: cur.vertex_count(),
        steps,
    };
    (cur, trace)
}

fn first_flexible(g: &MultiGraph) -> Option<(EdgeId, Rule)> {
    g.edges().iter().filter(|e| !e.is_loop()).find_map(|e| {
        let v = is_flexible_edge(g, e.id).ok()?;
        v.flexible.then_some((e.id, v.rule))
    })
}

/// Outcome of [`verify_trace`]. `failed_step` is `None` when the problem is
/// with the trace as a whole (orders) rather than a particular step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    pub ok: bool,
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
    /// The replayed graph, up to the point of failure.
    #[serde(skip)]
    pub graph: MultiGraph,
}

/// Replays `t` from `g`, re-deciding every step's flexibility.
pub fn verify_trace(g: &MultiGraph, t: &ReductionTrace) -> TraceCheck {
    let fail = |step: Option<usize>, reason: String, graph: MultiGraph| TraceCheck {
        ok: false,
        failed_step: step,
        reason: Some(reason),
        graph,
    };
    if g.vertex_count() != t.initial_order {
        return fail(
            None,
            format!(
                "initial order {} but graph has {} vertices",
                t.initial_order,
                g.vertex_count()
            ),
            g.clone(),
        );
    }
    let mut cur = g.clone();
    for (i, s) in t.steps.iter().enumerate() {
        let verdict = match is_flexible_edge(&cur, s.edge) {
            Ok(v) => v,
            Err(e) => return fail(Some(i), e.to_string(), cur),
        };
        if !verdict.flexible {
            return fail(Some(i), format!("edge {} is not flexible", s.edge), cur);
        }
        if verdict.rule != s.rule {
            return fail(
                Some(i),
                format!("edge {} is {}, trace says {}", s.edge, verdict.rule, s.rule),
                cur,
            );
        }
        let c = contract_edge(&cur, s.edge).expect("checked above");
        if c.merged != s.merged || c.removed != s.removed || c.edge_map != s.id_map {
            return fail(
                Some(i),
                format!("contraction of edge {} does not match the record", s.edge),
                cur,
            );
        }
        cur = c.graph;
    }
    if cur.vertex_count() != t.final_order {
        let n = cur.vertex_count();
        return fail(
            None,
            format!("final order {} but replay gives {n}", t.final_order),
            cur,
        );
    }
    TraceCheck {
        ok: true,
        failed_step: None,
        reason: None,
        graph: cur,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedCheck {
    /// Verdict for the input graph, decided on the reduced graph.
    pub upper_embeddable: bool,
    pub initial_order: usize,
    pub reduced_order: usize,
    /// Exact report for the reduced graph. Its `xi` is the reduced graph's
    /// deficiency; only the verdict transfers to the input.
    pub reduced: GenusReport,
    pub trace: ReductionTrace,
    #[serde(skip)]
    pub reduced_graph: MultiGraph,
    pub trees_before: Option<u128>,
    pub trees_after: Option<u128>,
    /// `trees_before / trees_after`.
    pub speedup: Option<f64>,
}

/// Decides upper-embeddability on the flexible weak minor.
pub fn check_reduced(g: &MultiGraph, guard: &EnumerationGuard) -> Result<ReducedCheck> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (h, trace) = flexible_weak_minor(g);
    let reduced = max_genus(&h, guard)?;
    let trees_before = count_spanning_trees(g);
    let trees_after = count_spanning_trees(&h);
    let speedup = match (trees_before, trees_after) {
        (Some(a), Some(b)) if b > 0 => Some(a as f64 / b as f64),
        _ => None,
    };
    Ok(ReducedCheck {
        upper_embeddable: reduced.upper_embeddable,
        initial_order: g.vertex_count(),
        reduced_order: h.vertex_count(),
        reduced,
        trace,
        reduced_graph: h,
        trees_before,
        trees_after,
        speedup,
    })
}

/// Irreducible graphs reachable under every contraction order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderExploration {
    /// Orders of the irreducible graphs reached.
    pub orders: BTreeSet<usize>,
    /// Distinct irreducible graphs up to isomorphism.
    pub irreducible: usize,
    /// States (graphs up to isomorphism) visited.
    pub states: usize,
    /// Hit `max_states` before finishing.
    pub truncated: bool,
}

/// Explores every order of flexible contractions, merging states by
/// isomorphism (or by exact graph above the canonical-form limit).
pub fn explore_orders(g: &MultiGraph, max_states: usize) -> OrderExploration {
    let mut seen = BTreeSet::new();
    let mut irreducible = BTreeSet::new();
    let mut orders = BTreeSet::new();
    let mut stack = vec![g.clone()];
    seen.insert(certificate(g));
    let mut truncated = false;
    while let Some(cur) = stack.pop() {
        let mut any = false;
        for e in cur.edges().iter().filter(|e| !e.is_loop()) {
            if !is_flexible_edge(&cur, e.id).is_ok_and(|v| v.flexible) {
                continue;
            }
            any = true;
            let next = contract_edge(&cur, e.id).expect("non-loop edge").graph;
            if seen.len() >= max_states {
                truncated = true;
                continue;
            }
            if seen.insert(certificate(&next)) {
                stack.push(next);
            }
        }
        if !any {
            orders.insert(cur.vertex_count());
            irreducible.insert(certificate(&cur));
        }
    }
    OrderExploration {
        orders,
        irreducible: irreducible.len(),
        states: seen.len(),
        truncated,
    }
}

/// Canonical form when small enough, else the MG1 text of the graph itself.
pub fn certificate(g: &MultiGraph) -> String {
    match canonical_form(g) {
        Some(c) => c.to_string(),
        None => format!("raw:{}", emit_mg1(g)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConfig {
    pub max_vertices: usize,
    pub max_graphs: usize,
    pub type_i: bool,
    pub type_ii: bool,
    /// Keep both sides of every split at two or more edge-ends.
    pub preserve_min_degree: bool,
    /// Expand each frontier in parallel. Output does not depend on it.
    pub parallel: bool,
    #[serde(skip)]
    pub guard: EnumerationGuard,
}

impl FamilyConfig {
    pub fn new(max_vertices: usize, max_graphs: usize) -> Self {
        FamilyConfig {
            max_vertices,
            max_graphs,
            type_i: true,
            type_ii: true,
            preserve_min_degree: true,
            parallel: true,
            guard: EnumerationGuard::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyNode {
    pub index: usize,
    pub graph: MultiGraph,
    pub parent: Option<usize>,
    /// The split applied to the parent's graph, with the rule that made it
    /// flexible.
    pub split: Option<(SplitSpec, Rule)>,
    /// Contracting this edge gives back the parent's graph exactly.
    pub splitting_edge: Option<EdgeId>,
    pub depth: usize,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub nodes: Vec<FamilyNode>,
    /// Candidates dropped because the genus oracle disagreed with the split
    /// rule. Zero unless a split rule is wrong.
    pub rejected: usize,
    /// Candidates skipped because checking them would exceed the guard.
    pub unchecked: usize,
    /// Stopped by `max_graphs` with candidates still pending.
    pub exhausted: bool,
}

impl Family {
    pub fn counts_per_depth(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for n in &self.nodes {
            if out.len() <= n.depth {
                out.resize(n.depth + 1, 0);
            }
            out[n.depth] += 1;
        }
        out
    }
}

struct Candidate {
    parent: usize,
    spec: SplitSpec,
    rule: Rule,
    graph: MultiGraph,
    splitting_edge: EdgeId,
    certificate: String,
}

/// Breadth-first closure of `seed` under flexible splits.
///
/// Splits at a vertex carrying loops are only taken when every loop has one
/// end on each side. Within a depth, new members are ordered by certificate,
/// so the result is the same with or without parallel expansion.
pub fn generate_family(seed: &MultiGraph, cfg: &FamilyConfig) -> Result<Family> {
    let (x, _) = xi(seed, &cfg.guard)?;
    if x > 1 {
        return Err(Error::SeedNotUpperEmbeddable { xi: x });
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    let cert = certificate(seed);
    seen.insert(cert.clone(), 0);
    let mut nodes = vec![FamilyNode {
        index: 0,
        graph: seed.clone(),
        parent: None,
        split: None,
        splitting_edge: None,
        depth: 0,
        certificate: cert,
    }];
    let mut frontier = vec![0usize];
    let mut rejected = 0;
    let mut unchecked = 0;
    let mut exhausted = false;
    let mut depth = 0;
    while !frontier.is_empty() && !exhausted {
        depth += 1;
        let expand = |&i: &usize| expand_node(&nodes[i], cfg);
        let mut cands: Vec<Candidate> = if cfg.parallel {
            frontier.par_iter().flat_map_iter(expand).collect()
        } else {
            frontier.iter().flat_map(expand).collect()
        };
        cands.sort_by(|a, b| {
            (&a.certificate, a.parent, &a.spec).cmp(&(&b.certificate, b.parent, &b.spec))
        });
        cands.dedup_by(|a, b| a.certificate == b.certificate);
        cands.retain(|c| !seen.contains_key(&c.certificate));

        let check = |c: &Candidate| match xi(&c.graph, &cfg.guard) {
            Ok((x, _)) => Some(x <= 1),
            Err(_) => None,
        };
        let verdicts: Vec<Option<bool>> = if cfg.parallel {
            cands.par_iter().map(check).collect()
        } else {
            cands.iter().map(check).collect()
        };

        frontier.clear();
        for (c, ok) in cands.into_iter().zip(verdicts) {
            match ok {
                None => unchecked += 1,
                Some(false) => rejected += 1,
                Some(true) => {
                    if nodes.len() >= cfg.max_graphs {
                        exhausted = true;
                        break;
                    }
                    let index = nodes.len();
                    seen.insert(c.certificate.clone(), index);
                    nodes.push(FamilyNode {
                        index,
                        graph: c.graph,
                        parent: Some(c.parent),
                        split: Some((c.spec, c.rule)),
                        splitting_edge: Some(c.splitting_edge),
                        depth,
                        certificate: c.certificate,
                    });
                    frontier.push(index);
                }
            }
        }
    }
    Ok(Family {
        nodes,
        rejected,
        unchecked,
        exhausted,
    })
}

fn expand_node(node: &FamilyNode, cfg: &FamilyConfig) -> Vec<Candidate> {
    let g = &node.graph;
    if g.vertex_count() >= cfg.max_vertices {
        return Vec::new();
    }
    let opts = SplitOptions {
        allow_loops: true,
        preserve_min_degree: cfg.preserve_min_degree,
    };
    let mut out = Vec::new();
    for &v in g.vertices() {
        let deg = g.degree(v).expect("own vertex");
        if deg < 4 {
            continue;
        }
        let type1 = cfg.type_i && is_type1_flexible(g, v).is_ok_and(|r| r.flexible);
        let try_type2 = cfg.type_ii && deg == 4;
        if !type1 && !try_type2 {
            continue;
        }
        for spec in split_specs(g, v, &opts).expect("own vertex") {
            if !spec.loops_straddle(g) {
                continue;
            }
            let rule = if type1 {
                Rule::TypeI
            } else if is_type2_flexible_split(g, &spec, &opts).is_ok_and(|r| r.flexible) {
                Rule::TypeII
            } else {
                continue;
            };
            let r = split_vertex(g, &spec, &opts).expect("listed specs are valid");
            out.push(Candidate {
                parent: node.index,
                certificate: certificate(&r.graph),
                graph: r.graph,
                splitting_edge: r.splitting_edge,
                spec,
                rule,
            });
        }
    }
    out
}

/// Lineage record for one family member, as written to the index file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub file: String,
    pub depth: usize,
    pub parent: Option<String>,
    pub split: Option<SplitSpec>,
    pub rule: Option<Rule>,
    #[serde(rename = "splittingEdge")]
    pub splitting_edge: Option<EdgeId>,
    pub certificate: String,
}

pub fn member_file_name(index: usize) -> String {
    format!("g{index:05}.mg1")
}

/// Index entries in node order.
pub fn family_index(f: &Family) -> Vec<IndexEntry> {
    f.nodes
        .iter()
        .map(|n| IndexEntry {
            file: member_file_name(n.index),
            depth: n.depth,
            parent: n.parent.map(member_file_name),
            split: n.split.as_ref().map(|(s, _)| s.clone()),
            rule: n.split.as_ref().map(|(_, r)| *r),
            splitting_edge: n.splitting_edge,
            certificate: n.certificate.clone(),
        })
        .collect()
}
