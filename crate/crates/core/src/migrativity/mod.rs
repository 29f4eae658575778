//! Deciding whether `U₁` is `(α, U₂)`-migrative, i.e. whether
//! `U₁(U₂(α,x), y) = U₁(x, U₂(α,y))` for all `x, y`.
//!
//! Two independent routes are provided: [`brute_force_migrative`] evaluates
//! the functional equation on every grid pair, while the characterizations in
//! [`characterize_thm31`] and [`characterize_thm32`] pick a case from the
//! position of `λ = U₂(α,e₁)` or `μ = U₂(α,f₁)` relative to `e₁ ≤ a₁ ≤ f₁`
//! and check a one-variable pointwise condition. [`equivalence_audit`] runs
//! both routes side by side and records every disagreement.

mod audit;
mod conditions;
mod corollary;
mod lemmas;
mod theorems;

pub use audit::{
    audit_pair, equivalence_audit, AuditReport, Disagreement, DisagreementKind, PairAudit, PairId, Tally,
    Violation, ViolationKind, MAX_LISTED,
};
pub use conditions::{Clause, ConditionFailure, Term};
pub use corollary::{corollary_dispatch, corollary_shape, CorollaryItem};
pub use lemmas::{
    check_lemma31, check_lemma32, check_post_definition_identity, check_prop31, check_prop33, Implication,
    LemmaReport, Outcome, PropCheck,
};
pub use theorems::{
    characterize_case, characterize_thm31, characterize_thm32, classify_case_thm31, classify_case_thm32, Case,
    CaseSelection, DispatchMode, Theorem,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::axioms;
use crate::grid::{GridPoint, UnitGrid};
use crate::operators::{classify, NeutralTriple, OperatorTable, SubclassTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MigrativityError {
    #[error("table is not a 2-uninorm with 2-neutral element {triple}")]
    NotTwoUninorm { triple: String },
    #[error("operands live on different grids (n = {left} and n = {right})")]
    GridMismatch { left: u32, right: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("subclass pair ({tag1}, {tag2}) matches no corollary shape")]
    ShapeMismatch { tag1: SubclassTag, tag2: SubclassTag },
}

pub type Result<T, E = MigrativityError> = std::result::Result<T, E>;

/// A table verified to be a 2-uninorm with a fixed 2-neutral element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoUninorm {
    table: OperatorTable,
    triple: NeutralTriple,
}

impl TwoUninorm {
    pub fn new(table: OperatorTable, triple: NeutralTriple) -> Result<Self> {
        if triple.grid() != table.grid() {
            return Err(MigrativityError::GridMismatch {
                left: table.grid().n(),
                right: triple.grid().n(),
            });
        }
        if !axioms::is_2uninorm(&table, Some(&triple)) {
            return Err(MigrativityError::NotTwoUninorm {
                triple: triple.to_string(),
            });
        }
        Ok(TwoUninorm { table, triple })
    }

    /// For tables already verified by the caller (e.g. the enumerator, which
    /// re-checks every emitted table).
    pub(crate) fn new_verified(table: OperatorTable, triple: NeutralTriple) -> Self {
        debug_assert!(axioms::is_2uninorm(&table, Some(&triple)));
        TwoUninorm { table, triple }
    }

    pub fn table(&self) -> &OperatorTable {
        &self.table
    }

    pub fn triple(&self) -> &NeutralTriple {
        &self.triple
    }

    pub fn tag(&self) -> SubclassTag {
        classify(&self.triple)
    }

    pub fn grid(&self) -> UnitGrid {
        self.table.grid()
    }
}

/// `(U₁, U₂, α)` on a common grid.
#[derive(Debug, Clone, Copy)]
pub struct MigrativePair<'a> {
    u1: &'a TwoUninorm,
    u2: &'a TwoUninorm,
    alpha: usize,
}

impl<'a> MigrativePair<'a> {
    pub fn new(u1: &'a TwoUninorm, u2: &'a TwoUninorm, alpha: GridPoint) -> Result<Self> {
        for other in [u2.grid(), alpha.grid()] {
            if other != u1.grid() {
                return Err(MigrativityError::GridMismatch {
                    left: u1.grid().n(),
                    right: other.n(),
                });
            }
        }
        Ok(MigrativePair {
            u1,
            u2,
            alpha: alpha.index() as usize,
        })
    }

    pub fn u1(&self) -> &'a TwoUninorm {
        self.u1
    }

    pub fn u2(&self) -> &'a TwoUninorm {
        self.u2
    }

    pub fn alpha(&self) -> GridPoint {
        self.point(self.alpha)
    }

    pub fn grid(&self) -> UnitGrid {
        self.u1.grid()
    }

    #[inline]
    pub(crate) fn top(&self) -> usize {
        self.u1.table.size() - 1
    }

    #[inline]
    pub(crate) fn point(&self, index: usize) -> GridPoint {
        self.grid().point(index as u32).expect("index on grid")
    }

    /// `U₁(x, y)` on indices.
    #[inline]
    pub(crate) fn op1(&self, x: usize, y: usize) -> usize {
        self.u1.table.get(x, y)
    }

    /// `U₂(α, x)` on indices.
    #[inline]
    pub(crate) fn base(&self, x: usize) -> usize {
        self.u2.table.get(self.alpha, x)
    }

    /// `(e₁, a₁, f₁)` as indices.
    #[inline]
    pub(crate) fn t1(&self) -> (usize, usize, usize) {
        self.u1.triple.indices()
    }

    pub(crate) fn lm(&self) -> (usize, usize) {
        let (e1, _, f1) = self.t1();
        (self.base(e1), self.base(f1))
    }
}

/// `λ = U₂(α, e₁)` and `μ = U₂(α, f₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaMu {
    pub lambda: GridPoint,
    pub mu: GridPoint,
}

pub fn lambda_mu(p: &MigrativePair<'_>) -> LambdaMu {
    let (l, m) = p.lm();
    LambdaMu {
        lambda: p.point(l),
        mu: p.point(m),
    }
}

/// Which decision procedure produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    BruteForce,
    Thm31(Case),
    Thm32(Case),
    Corollary(CorollaryItem, u8),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::BruteForce => f.write_str("brute-force"),
            Route::Thm31(c) => write!(f, "lambda-classified case {c}"),
            Route::Thm32(c) => write!(f, "mu-classified case {c}"),
            Route::Corollary(item, bullet) => write!(f, "corollary {item} bullet {bullet}"),
        }
    }
}

/// A cell where the two sides of the migrativity equation differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquationWitness {
    pub x: GridPoint,
    pub y: GridPoint,
    /// `U₁(U₂(α,x), y)`
    pub lhs: GridPoint,
    /// `U₁(x, U₂(α,y))`
    pub rhs: GridPoint,
}

impl EquationWitness {
    pub fn recheck(&self, p: &MigrativePair<'_>) -> bool {
        let (x, y) = (self.x.index() as usize, self.y.index() as usize);
        let lhs = p.op1(p.base(x), y);
        let rhs = p.op1(x, p.base(y));
        lhs != rhs && lhs == self.lhs.index() as usize && rhs == self.rhs.index() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MigrativityVerdict {
    pub migrative: bool,
    pub route: Route,
    /// Inequalities that selected the case, in evaluation order.
    pub case_conditions: Vec<String>,
    pub witness: Option<EquationWitness>,
    pub condition_failure: Option<ConditionFailure>,
}

/// Evaluates the migrativity equation on every grid pair. The witness is the
/// first violating `(x, y)` in row-major order.
pub fn brute_force_migrative(p: &MigrativePair<'_>) -> MigrativityVerdict {
    let size = p.top() + 1;
    let mut witness = None;
    'scan: for x in 0..size {
        let bx = p.base(x);
        for y in 0..size {
            let lhs = p.op1(bx, y);
            let rhs = p.op1(x, p.base(y));
            if lhs != rhs {
                witness = Some(EquationWitness {
                    x: p.point(x),
                    y: p.point(y),
                    lhs: p.point(lhs),
                    rhs: p.point(rhs),
                });
                break 'scan;
            }
        }
    }
    MigrativityVerdict {
        migrative: witness.is_none(),
        route: Route::BruteForce,
        case_conditions: Vec::new(),
        witness,
        condition_failure: None,
    }
}

/// Boolean-only brute force; skips witness construction.
pub(crate) fn is_migrative(p: &MigrativePair<'_>) -> bool {
    let size = p.top() + 1;
    (0..size).all(|x| {
        let bx = p.base(x);
        (0..size).all(|y| p.op1(bx, y) == p.op1(x, p.base(y)))
    })
}
