//! Maximum genus and upper-embeddability of multigraphs.
//!
//! A connected graph's maximum genus is `(beta - xi) / 2`, where `beta` is
//! its cycle rank and `xi` the least number of odd-sized co-tree components
//! over all spanning trees. The graph is upper embeddable when `xi <= 1`.
//! This crate computes these exactly by spanning-tree enumeration, and
//! implements the vertex-splitting and edge-contraction rules that preserve
//! upper-embeddability.
//!
//! ```
//! use maxgenus::{genus, MultiGraph};
//!
//! let k4 = MultiGraph::complete(4);
//! let r = genus::max_genus(&k4, &genus::EnumerationGuard::default()).unwrap();
//! assert_eq!((r.betti, r.xi, r.max_genus), (3, 1, 1));
//! ```

pub mod error;
pub mod fixtures;
pub mod genus;
pub mod graph;
pub mod io;
pub mod iso;
pub mod random;
pub mod reduce;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{ComponentPartition, Edge, EdgeId, MultiGraph, VertexId};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/deficiency.md")]
    mod deficiency {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
}
