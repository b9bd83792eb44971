//! Lowering an evaluated tower to field arithmetic, then to a
//! straightedge-and-compass program, and drawing the result.

pub mod arith;
pub mod geom;
pub mod svg;

use crate::splitting::PartRef;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("the tower has not been evaluated")]
    Unevaluated,
    #[error("no register holds {0}")]
    MissingValue(PartRef),
    #[error("instruction {index}: negative radicand {value}")]
    NegativeRadicand { index: usize, value: f64 },
    #[error("instruction {index}: division by zero")]
    DivisionByZero { index: usize },
    #[error("compiled value of {0} disagrees with the tower")]
    ValueMismatch(PartRef),
    #[error("instruction {index} refers to a missing or mistyped operand")]
    Malformed { index: usize },
    #[error("instruction {index}: degenerate intersection")]
    DegenerateIntersection { index: usize },
}
