//! Exact verification of 2-uninorms and their migrativity on finite chains.
//!
//! Operators on `[0, 1]` are discretized onto a [`grid::UnitGrid`] and handled
//! as exact Cayley tables. The [`axioms`] module checks the 2-uninorm axioms,
//! [`migrativity`] decides `(α, U₂)`-migrativity both by brute force and by
//! case-dispatched characterizations, and [`chain_enum`] enumerates every
//! 2-uninorm on a small chain so the two decision routes can be compared
//! exhaustively.

pub mod axioms;
pub mod chain_enum;
pub mod grid;
pub mod migrativity;
pub mod operators;

pub use grid::{make_grid, GridPoint, Mode, ToleranceConfig, UnitGrid};
pub use operators::{NeutralTriple, OperatorSpec, OperatorTable, SubclassTag};
