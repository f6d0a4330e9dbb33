//! Cut problems on directed and undirected graphs: double cuts, bicuts,
//! linear 3-cuts and `{s,t}`-separating k-cuts.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. With `std` enabled the enumeration-heavy loops run on rayon.
//!
//! Layout:
//!
//! * [`graph`], [`nodeset`]: graph types, node bitsets, cut functions, contraction.
//! * [`flow`]: exact max-flow / min-cut with deterministic sink sides.
//! * [`lp`]: dense simplex with lazy row generation.
//! * [`doublecut`], [`bicut`], [`lin3cut`], [`kcut`]: the solvers.
//! * [`gadgets`]: instance families and reductions.
//! * [`oracle`]: exhaustive reference solvers.
//! * [`certificate`]: independent feasibility checks for solver output.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bicut;
pub mod certificate;
pub mod doublecut;
mod error;
pub mod flow;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod kcut;
pub mod lin3cut;
pub mod lp;
pub mod nodeset;
pub mod oracle;
mod par;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Arc, CutPair, UndirectedGraph, WeightedDigraph};
pub use nodeset::NodeSet;
pub use weight::INFINITE;

/// Dense 0-based node index.
pub type NodeId = usize;
/// Index into a graph's arc (or edge) list.
pub type ArcId = usize;
