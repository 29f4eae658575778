//! Exhaustive enumeration of 2-uninorms on small chains.
//!
//! [`enumerate_2uninorms`] backtracks over the upper triangle of the table
//! with neutral rows prefilled, monotone bounds and an associativity scan at
//! every node. [`enumerate_naive`] generates every commutative table and
//! filters it through [`crate::axioms`]; it exists to cross-check the first.

mod census;
mod naive;
mod pruned;

pub use census::{census, census_audit, Census, CensusAudit, CensusLimits, StructuralTally};
pub use naive::{enumerate_naive, naive_census, NaiveCensus, NAIVE_MAX_N};
pub use pruned::enumerate_2uninorms;

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::grid::UnitGrid;
use crate::operators::{NeutralTriple, OperatorTable};

pub const DEFAULT_MAX_N: u32 = 4;
pub const DEFAULT_MAX_TABLES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("grid n = {n} exceeds the enumeration cap {cap}")]
    GridTooLarge { n: u32, cap: u32 },
    #[error("enumeration stopped early ({reason}) after {emitted} tables")]
    BudgetExceeded { reason: StopReason, emitted: u64 },
}

#[derive(Debug, Clone)]
pub struct EnumJob {
    triple: NeutralTriple,
    pub max_tables: u64,
    pub budget: Option<Duration>,
}

impl EnumJob {
    pub fn new(triple: NeutralTriple) -> Result<Self, EnumError> {
        Self::with_size_cap(triple, DEFAULT_MAX_N)
    }

    pub fn with_size_cap(triple: NeutralTriple, cap: u32) -> Result<Self, EnumError> {
        let n = triple.grid().n();
        if n > cap {
            return Err(EnumError::GridTooLarge { n, cap });
        }
        Ok(EnumJob {
            triple,
            max_tables: DEFAULT_MAX_TABLES,
            budget: None,
        })
    }

    pub fn max_tables(mut self, cap: u64) -> Self {
        self.max_tables = cap;
        self
    }

    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn grid(&self) -> UnitGrid {
        self.triple.grid()
    }

    pub fn triple(&self) -> &NeutralTriple {
        &self.triple
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.budget.map(|b| Instant::now() + b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StopReason {
    TableCap,
    TimeBudget,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StopReason::TableCap => "table cap reached",
            StopReason::TimeBudget => "time budget exhausted",
        })
    }
}

/// What removed candidates from the search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounts {
    /// Cells below the diagonal, fixed by symmetry.
    pub commutativity: u64,
    /// Cells fixed by the neutral rows of the triple.
    pub neutral_rows: u64,
    /// Candidate values excluded by monotone bounds.
    pub monotonicity: u64,
    /// Candidate values rejected by the associativity scan.
    pub associativity: u64,
    /// Complete tables rejected by the final axiom check. Should stay zero.
    pub final_check: u64,
}

impl PruneCounts {
    /// Adds the search-time counters; the structural ones are per job.
    fn merge(&mut self, o: &PruneCounts) {
        self.monotonicity += o.monotonicity;
        self.associativity += o.associativity;
        self.final_check += o.final_check;
    }
}

impl EnumStats {
    /// Sums two jobs, including the structural counters.
    pub fn accumulate(&mut self, o: &EnumStats) {
        self.tables_emitted += o.tables_emitted;
        self.nodes_explored += o.nodes_explored;
        self.pruned_by.commutativity += o.pruned_by.commutativity;
        self.pruned_by.neutral_rows += o.pruned_by.neutral_rows;
        self.pruned_by.merge(&o.pruned_by);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumStats {
    pub tables_emitted: u64,
    pub nodes_explored: u64,
    pub pruned_by: PruneCounts,
}

/// Tables emitted by one job, in lexicographic fill order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub tables: Vec<OperatorTable>,
    pub stats: EnumStats,
    pub stop: Option<StopReason>,
}

impl Enumeration {
    pub fn is_complete(&self) -> bool {
        self.stop.is_none()
    }

    pub fn into_complete(self) -> Result<Vec<OperatorTable>, EnumError> {
        match self.stop {
            None => Ok(self.tables),
            Some(reason) => Err(EnumError::BudgetExceeded {
                reason,
                emitted: self.tables.len() as u64,
            }),
        }
    }
}
