//! Metric dimension algorithms for maximal outerplanar graphs.
//!
//! The crate decides whether a graph has metric dimension 2 (with a witness
//! basis and its grid embedding), builds resolving sets of size `⌈2n/5⌉` in
//! linear time, and ships generators plus brute-force oracles for checking
//! both at small orders.

pub mod bound;
pub mod dim_two;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod mop;

pub use bound::{build_resolving_set, build_resolving_set_with, BuildOptions};
pub use dim_two::{
    decide_dim_two, decide_dim_two_simple, embed, verify_characterization, GridEmbedding,
};
pub use error::{Error, Result};
pub use graph::{distance_table, is_resolving, DistanceTable, Graph, Resolution, VertexSet};
pub use mop::{Interval, MopGraph, Zigzag};
