//! Exact combinatorial engine for subdivisions under local density
//! conditions: certify per-anchor copy counts of a small pattern in a host
//! graph, enumerate subdivisions with distinct vertex sets by two
//! independent engines, generate the extremal hosts, and evaluate the
//! closed-form bounds they are measured against.
//!
//! Everything is exact and desk-scale: enumeration is exponential and
//! guarded by explicit caps rather than sampling or approximation.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod density;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod pattern;
pub mod subdivision;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use pattern::{Pattern, PATTERN_CAP};
pub use witness::{SubdivisionWitness, WitnessViolation};
