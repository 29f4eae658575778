//! Operator families, exact Cayley tables, and triple classification.

mod spec;
mod table;
mod triple;

pub use spec::{discretize, discretize_f64, evaluate, rescale_into, OperatorSpec, Param, RescaledBlock};
pub use table::OperatorTable;
pub use triple::{classify, uninorm_neutral, NeutralTriple, SubclassTag};

use thiserror::Error;

use crate::grid::GridError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("triple ({e}, {a}, {f}) violates e <= a <= f")]
    TripleOrder { e: String, a: String, f: String },
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterRange { name: &'static str, value: String },
    #[error("parameter {name} = {value} is not a point of the grid with n = {n}")]
    ParameterNotOnGrid { name: &'static str, value: String, n: u32 },
    #[error("value at ({x}, {y}) is {value}, not a point of the grid with n = {n}")]
    ValueNotOnGrid { x: String, y: String, value: String, n: u32 },
    #[error("table grid mismatch: expected n = {expected}, found n = {found}")]
    GridMismatch { expected: u32, found: u32 },
    #[error("table must be {expected}x{expected}: {detail}")]
    TableShape { expected: usize, detail: String },
    #[error("table entry {value} at ({row}, {col}) exceeds n = {n}")]
    EntryOutOfRange { row: usize, col: usize, value: u32, n: u32 },
    #[error("empty rescaling interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("{spec} is not a 2-uninorm: {reason}")]
    NotA2Uninorm { spec: String, reason: String },
}

pub type Result<T, E = OperatorError> = std::result::Result<T, E>;
