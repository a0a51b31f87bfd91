//! Edge stripping, class generation and statistics.

mod class;
mod stats;
mod strip;

pub use class::{generate_class, ClassFilters, ClassRecord, LevelStats, Strategy};
pub use stats::{stats, Distribution, RowSummary};
pub use strip::{strip, StripMode, StripSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("edge count must be at least 1")]
    ZeroCount,
    #[error("cannot strip {count} of {edges} edges")]
    CountTooLarge { count: usize, edges: usize },
    #[error("hypergraph is not a subgraph of the master")]
    NotSubgraph,
    #[error("master {0} is not a KS set")]
    MasterNotKs(String),
}
