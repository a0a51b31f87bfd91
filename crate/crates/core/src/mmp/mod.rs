//! The MMP hypergraph line language.
//!
//! One hypergraph per line: edges are runs of vertex glyphs separated by
//! commas and the statement ends with `.`. An optional coordinatization
//! block `{v={c1,...,cn},...}` may follow, and anything after that is kept
//! as free-form annotation text.

mod codec;
mod glyph;
mod hypergraph;

pub use codec::{
    check_mmp_validity, parse_line, parse_line_with, serialize, CoordinatizationBlock, MmpReport, ParseOptions,
    ParsedLine,
};
pub use glyph::{VertexLabel, ALPHABET};
pub use hypergraph::Hypergraph;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmpError {
    #[error("line is not ASCII")]
    NonAscii,
    #[error("line has no edges")]
    NoEdges,
    #[error("unterminated line")]
    Unterminated,
    #[error("empty edge at position {edge}")]
    EmptyEdge { edge: usize },
    #[error("character {0:?} is not a vertex glyph")]
    BadGlyph(char),
    #[error("edge {edge} repeats a vertex")]
    RepeatedVertex { edge: usize },
    #[error("coordinatization names unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {vertex} has {found} components, expected {expected}")]
    Arity { vertex: String, expected: usize, found: usize },
    #[error("malformed coordinatization block: {0}")]
    BadBlock(String),
}
