//! Generation and analysis of Kochen-Specker hypergraphs.
//!
//! A master hypergraph is built from a small set of exact vector
//! components: every projective ray with those components becomes a
//! vertex and every orthogonal basis an edge. Critical KS subsets are then
//! derived by edge stripping, 0-1 assignment search and isomorphism
//! reduction.

pub mod algebra;
pub mod bitset;
pub mod master;
pub mod mmp;
pub mod par;
pub mod pipeline;
pub mod solver;
pub mod structure;

pub use algebra::{CycloRational, Field, Ray};
pub use mmp::{parse_line, serialize, Hypergraph};
