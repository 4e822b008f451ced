//! Finite (and finitely presented infinite) accessible pointed graphs read
//! as pictures of possibly non-well-founded sets.
//!
//! The crate provides:
//!
//! - the graph data model with a line-based text format and DOT export
//!   ([`graph`]);
//! - well-founded decorations and canonical pictures ([`decorate`]);
//! - the graph relations ≅, ≅* (Finsler), ≅t (Scott), the maximum
//!   bisimulation, and decoration-like homomorphisms ([`relations`]);
//! - the extensionality notions derived from those relations ([`ext`]);
//! - canonical collapses per notion, bisimulation products, joinability,
//!   bounded unfoldings, and flat equation systems ([`construct`]);
//! - finitely presented infinite chain graphs with exact symbolic witness
//!   checking, and the gallery of named example graphs ([`omega`]);
//! - graph generators for tests and benchmarks ([`corpus`]).
//!
//! Everything is a pure function over immutable values. With the
//! `parallel` feature (default) the partition-refinement engine switches
//! to rayon past a size threshold; disable default features for a fully
//! sequential build.
//!
//! ```
//! use apg::{bisimilar, collapse_afa, isomorphic, Apg};
//!
//! let omega = Apg::parse("apg v1\npoint x\nx: x\n")?;
//! let cycle = Apg::parse("apg v1\npoint a\na: b\nb: a\n")?;
//! assert!(bisimilar(&omega, &cycle));
//! assert!(isomorphic(&omega, &cycle).is_none());
//! assert!(isomorphic(&collapse_afa(&cycle), &omega).is_some());
//! # Ok::<(), apg::Error>(())
//! ```

pub mod construct;
pub mod corpus;
pub mod decorate;
pub mod error;
pub mod ext;
pub mod graph;
pub mod omega;
pub mod refine;
pub mod relations;
pub mod set;

pub use error::{Error, Result};
pub use graph::{Apg, NodeId};
pub use set::SetLiteral;

pub use decorate::{canonical_picture, decorate_wf, is_picture_of, Decoration};
pub use ext::{classify, is_ext_wrt, is_ext_wrt_oracle, is_extensional, ExtRelation, ExtReport};
pub use refine::{Partition, Side};
pub use relations::{
    bisimilar, check_bisimulation, dhom_exists, finsler_eq, isomorphic, max_bisim_partition,
    mutual_dhom, same_children, scott_eq, scott_partition, star, verify_dhom, NodeMap,
    PairRelation,
};

pub use construct::{
    collapse_afa, collapse_iter, joinable, product_bisim, solve_flat_system, unfold_depth,
    CollapseRel, FlatSystem, FlatTerm,
};
pub use omega::{
    gallery_graph, gallery_names, index_eq, make_j, make_omega1, make_omega2, make_q2, make_vee,
    truncate, verify_dhom_symbolic, IndexSet, OmegaPresentation, SymbolicWitness,
};
