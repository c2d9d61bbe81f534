//! Induced densities and inducibility of small graphs.
//!
//! Small graphs (at most 64 vertices) are stored as one neighbor bitset per
//! vertex; large constructed hosts use adjacency lists. Exact quantities are big rationals; estimates carry Wilson
//! intervals and are reproducible from their seed.

// argument guards are written `!(x > 0.0)` on purpose so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod brightness;
pub mod density;
pub mod error;
pub mod exact;
pub mod graph;
pub mod proba;
pub mod search;
pub mod stats;
pub mod structure;

pub use error::{Error, Result};
pub use exact::Rational;
pub use graph::{parse_graph6, DegreeProfile, Graph, VertexSet};
