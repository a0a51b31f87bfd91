//! Master hypergraphs from component sets, connected components and
//! coordinatizations.

mod build;
mod coord;
mod decompose;
mod rays;

pub use build::{build_master, coordinatization_block, MasterOptions, MasterSet};
pub use coord::{
    find_coordinatization, parse_block, verify_coordinatization, CoordSearch, CoordinatizationReport, Violation,
};
pub use decompose::{components, decompose, is_connected};
pub use rays::{enumerate_rays, ComponentSet};


use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MasterError {
    #[error("dimension must be positive")]
    Dimension,
    #[error("component set has no nonzero value")]
    NoNonzeroComponent,
    #[error("{tuples} component tuples exceed the limit of {limit}")]
    TupleLimit { tuples: u128, limit: u64 },
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error("clique search exceeded {0} nodes")]
    CliqueBudget(u64),
}
