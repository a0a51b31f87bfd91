//! Exact cyclotomic arithmetic, rays and component expressions.

mod expr;
mod field;
mod fingerprint;
mod ray;

pub use expr::{format_component, parse_component, parse_component_in, parse_component_list, split_list};
pub use field::{CycloRational, Field, DEFAULT_ORDER};
pub use fingerprint::{ModP, RayTable};
pub use ray::{hermitian_inner, normalize_ray, orthogonal, Ray};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is outside the field; it needs Q(zeta_{required_order})")]
    OutsideField { value: String, required_order: u32 },
    #[error("{0} is not expressible in a cyclotomic field")]
    Unsupported(String),
    #[error("zero vector has no ray")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}
