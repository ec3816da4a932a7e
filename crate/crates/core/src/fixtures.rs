//! Built-in corpus: the small graphs used throughout the docs and tests.
//!
//! The `fig*` graphs are transcriptions of hand-drawn examples. Vertex
//! labels follow the drawings; ids are assigned in label order and edge ids
//! in listing order. The split/contracted variants are listed with the same
//! id conventions that [`crate::transforms`] produces, so their canonical
//! MG1 text can be compared byte for byte against a computed transform.

use crate::graph::{MultiGraph, VertexId};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: MultiGraph,
    pub labels: Vec<(String, VertexId)>,
}

impl Fixture {
    fn from_labels(name: &str, labels: &[&str], edges: &[(&str, &str)]) -> Fixture {
        let id = |l: &str| {
            labels
                .iter()
                .position(|x| *x == l)
                .unwrap_or_else(|| panic!("{name}: unknown label {l}")) as u32
        };
        let es: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (id(a), id(b))).collect();
        Fixture {
            name: name.to_string(),
            graph: MultiGraph::build(labels.len(), &es).expect("fixture is well formed"),
            labels: labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.to_string(), VertexId(i as u32)))
                .collect(),
        }
    }

    fn unlabeled(name: &str, graph: MultiGraph) -> Fixture {
        let labels = graph
            .vertices()
            .iter()
            .map(|v| (v.to_string(), *v))
            .collect();
        Fixture {
            name: name.to_string(),
            graph,
            labels,
        }
    }

    /// Vertex id for a label. Panics on unknown labels.
    pub fn v(&self, label: &str) -> VertexId {
        self.vertex(label)
            .unwrap_or_else(|| panic!("{}: no vertex labelled {label}", self.name))
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| *v)
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels
            .iter()
            .find(|(_, x)| *x == v)
            .map(|(l, _)| l.as_str())
    }
}

const FIG1_LABELS: [&str; 4] = ["left", "right", "top", "centre"];

/// K4 drawn with one vertex in the middle of a triangle.
pub fn fig1_g() -> Fixture {
    Fixture::from_labels(
        "fig1_g",
        &FIG1_LABELS,
        &[
            ("left", "right"),
            ("left", "centre"),
            ("left", "top"),
            ("centre", "top"),
            ("centre", "right"),
            ("right", "top"),
        ],
    )
}

/// `fig1_g` with the central vertical edge contracted: three vertices,
/// the two sides meeting the top vertex doubled.
pub fn fig2_g1() -> Fixture {
    let mut f = Fixture::from_labels(
        "fig2_g1",
        &["left", "right", "top"],
        &[
            ("left", "right"),
            ("left", "top"),
            ("left", "top"),
            ("right", "top"),
            ("right", "top"),
        ],
    );
    // edge ids follow fig1_g; id 3 was the contracted edge
    f.graph = renumber_edges(&f.graph, &[0, 1, 2, 4, 5]);
    f
}

/// A single vertex with three loops.
pub fn fig3_g2() -> Fixture {
    Fixture::from_labels(
        "fig3_g2",
        &["centre"],
        &[
            ("centre", "centre"),
            ("centre", "centre"),
            ("centre", "centre"),
        ],
    )
}

fn renumber_edges(g: &MultiGraph, ids: &[u32]) -> MultiGraph {
    use crate::graph::EdgeId;
    MultiGraph::from_parts(
        g.vertices().iter().copied(),
        g.edges()
            .iter()
            .zip(ids)
            .map(|(e, &id)| (EdgeId(id), e.u, e.w)),
    )
    .expect("renumbering keeps the graph well formed")
}

const FIG4_LABELS: [&str; 17] = [
    "l1", "l2", "l3", "l4", "r1", "r2", "r3", "r4", "a", "b", "c", "d", "e", "f", "g", "h", "v",
];

/// Two ladders joined through a central degree-4 vertex `v`.
pub fn fig4_g() -> Fixture {
    Fixture::from_labels("fig4_g", &FIG4_LABELS, &fig4_edges("v", "v", "v", "v"))
}

fn fig4_edges<'a>(
    to_b: &'a str,
    to_c: &'a str,
    to_f: &'a str,
    to_g: &'a str,
) -> Vec<(&'a str, &'a str)> {
    vec![
        ("l1", "l2"),
        ("l2", "l3"),
        ("l3", "l4"),
        ("l1", "a"),
        ("a", "b"),
        ("b", to_b),
        ("l4", "d"),
        ("d", "c"),
        ("c", to_c),
        ("l2", "a"),
        ("l3", "d"),
        ("b", "c"),
        ("l1", "r1"),
        ("r1", "r2"),
        ("r2", "r3"),
        ("r3", "r4"),
        ("l4", "r4"),
        ("r1", "e"),
        ("e", "f"),
        ("f", to_f),
        ("r4", "h"),
        ("h", "g"),
        ("g", to_g),
        ("f", "g"),
        ("e", "r2"),
        ("h", "r3"),
    ]
}

fn fig4_split_labels() -> Vec<&'static str> {
    let mut labels: Vec<&str> = FIG4_LABELS.to_vec();
    labels[16] = "v'";
    labels.push("v''");
    labels
}

/// `v` split with `v'` on `{b, f}` and `v''` on `{c, g}`.
pub fn fig5_g1() -> Fixture {
    let mut edges = fig4_edges("v'", "v''", "v'", "v''");
    edges.push(("v'", "v''"));
    Fixture::from_labels("fig5_g1", &fig4_split_labels(), &edges)
}

/// `v` split with `v'` on `{b, c}` and `v''` on `{f, g}`.
pub fn fig6_g2() -> Fixture {
    let mut edges = fig4_edges("v'", "v'", "v''", "v''");
    edges.push(("v'", "v''"));
    Fixture::from_labels("fig6_g2", &fig4_split_labels(), &edges)
}

const FIG7_LABELS: [&str; 6] = ["lt", "lb", "m1", "m2", "rt", "rb"];

fn fig7_edges() -> Vec<(&'static str, &'static str)> {
    vec![
        ("lt", "lb"),
        ("m1", "lt"),
        ("m1", "lb"),
        ("m1", "m2"),
        ("m2", "rt"),
        ("m2", "rb"),
        ("rt", "rb"),
    ]
}

/// Two triangles joined by a bridge.
pub fn fig7_g1() -> Fixture {
    Fixture::from_labels("fig7_g1", &FIG7_LABELS, &fig7_edges())
}

/// `fig7_g1` plus a chord from the left triangle to the far bridge end.
pub fn fig8_g() -> Fixture {
    let mut edges = fig7_edges();
    edges.push(("lt", "m2"));
    Fixture::from_labels("fig8_g", &FIG7_LABELS, &edges)
}

const FIG23_LABELS: [&str; 6] = ["a", "b", "d", "e", "t1", "t2"];

fn fig23_edges<'a>(toward_a_t: &'a str, toward_de: &'a str) -> Vec<(&'a str, &'a str)> {
    vec![
        ("a", "a"),
        ("a", "d"),
        ("a", toward_a_t),
        ("d", "e"),
        ("d", "e"),
        ("d", "e"),
        ("e", toward_de),
        ("d", toward_de),
        (toward_a_t, "t1"),
        (toward_a_t, "t2"),
        ("t1", "t2"),
    ]
}

/// Degree-5 vertex `b`; `a` carries a loop and `d`, `e` a triple edge.
pub fn fig23_g() -> Fixture {
    Fixture::from_labels("fig23_g", &FIG23_LABELS, &fig23_edges("b", "b"))
}

/// `fig23_g` with `b` split: `b'` on `{a, t1, t2}`, `b''` on `{d, e}`.
pub fn fig24_gstar() -> Fixture {
    let mut labels = FIG23_LABELS.to_vec();
    labels[1] = "b'";
    labels.push("b''");
    let mut edges = fig23_edges("b'", "b''");
    edges.push(("b'", "b''"));
    Fixture::from_labels("fig24_gstar", &labels, &edges)
}

/// Names accepted by [`by_name`] besides the parametrised families.
pub const FIGURE_NAMES: [&str; 10] = [
    "fig1_g",
    "fig2_g1",
    "fig3_g2",
    "fig4_g",
    "fig5_g1",
    "fig6_g2",
    "fig7_g1",
    "fig8_g",
    "fig23_g",
    "fig24_gstar",
];

/// All figure graphs in [`FIGURE_NAMES`] order.
pub fn figures() -> Vec<Fixture> {
    FIGURE_NAMES
        .iter()
        .map(|n| by_name(n).expect("figure exists"))
        .collect()
}

fn parse_param(name: &str, family: &str) -> Option<usize> {
    name.strip_prefix(family)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .parse()
        .ok()
}

/// Looks up a fixture by name: a figure name, `theta`, `k4`, `k<n>`,
/// `bouquet(n)`, `cycle(n)` or `wheel(n)`.
pub fn by_name(name: &str) -> Option<Fixture> {
    let fig = match name {
        "fig1_g" => Some(fig1_g()),
        "fig2_g1" => Some(fig2_g1()),
        "fig3_g2" => Some(fig3_g2()),
        "fig4_g" => Some(fig4_g()),
        "fig5_g1" => Some(fig5_g1()),
        "fig6_g2" => Some(fig6_g2()),
        "fig7_g1" => Some(fig7_g1()),
        "fig8_g" => Some(fig8_g()),
        "fig23_g" => Some(fig23_g()),
        "fig24_gstar" => Some(fig24_gstar()),
        "theta" => Some(Fixture::unlabeled("theta", MultiGraph::theta())),
        _ => None,
    };
    if fig.is_some() {
        return fig;
    }
    if let Some(n) = parse_param(name, "bouquet") {
        return Some(Fixture::unlabeled(name, MultiGraph::bouquet(n)));
    }
    if let Some(n) = parse_param(name, "cycle").filter(|&n| n >= 1) {
        return Some(Fixture::unlabeled(name, MultiGraph::cycle(n)));
    }
    if let Some(n) = parse_param(name, "wheel").filter(|&n| n >= 3) {
        return Some(Fixture::unlabeled(name, MultiGraph::wheel(n)));
    }
    let n: usize = name.strip_prefix('k')?.parse().ok()?;
    Some(Fixture::unlabeled(name, MultiGraph::complete(n)))
}
