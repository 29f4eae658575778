//! One-variable pointwise conditions of the form `L(x) = R(x)` on `[from, to]`.

use std::fmt;

use serde::Serialize;

use super::MigrativePair;
use crate::grid::GridPoint;

/// One side of a pointwise condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    /// `U₂(α, x)`
    Base,
    /// `U₁(p, x)` for a fixed pivot `p`.
    Pivot(GridPoint),
}

impl Term {
    fn eval(self, p: &MigrativePair<'_>, x: usize) -> usize {
        match self {
            Term::Base => p.base(x),
            Term::Pivot(q) => p.op1(q.index() as usize, x),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Base => f.write_str("U2(alpha,x)"),
            Term::Pivot(q) => write!(f, "U1({q},x)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Clause {
    pub lhs: Term,
    pub rhs: Term,
    pub from: GridPoint,
    pub to: GridPoint,
}

impl Clause {
    pub(crate) fn new(p: &MigrativePair<'_>, lhs: Term, rhs: Term, from: usize, to: usize) -> Self {
        Clause {
            lhs,
            rhs,
            from: p.point(from),
            to: p.point(to),
        }
    }

    /// First `x` in `[from, to]` where the sides differ.
    pub fn first_failure(&self, p: &MigrativePair<'_>) -> Option<ConditionFailure> {
        (self.from.index() as usize..=self.to.index() as usize).find_map(|x| {
            let (l, r) = (self.lhs.eval(p, x), self.rhs.eval(p, x));
            (l != r).then(|| ConditionFailure {
                clause: *self,
                x: p.point(x),
                lhs: p.point(l),
                rhs: p.point(r),
            })
        })
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} on [{}, {}]", self.lhs, self.rhs, self.from, self.to)
    }
}

/// The first `x` at which a case condition fails, with both sides evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub clause: Clause,
    pub x: GridPoint,
    pub lhs: GridPoint,
    pub rhs: GridPoint,
}

impl ConditionFailure {
    pub fn recheck(&self, p: &MigrativePair<'_>) -> bool {
        let x = self.x.index() as usize;
        let (l, r) = (self.clause.lhs.eval(p, x), self.clause.rhs.eval(p, x));
        l != r && l == self.lhs.index() as usize && r == self.rhs.index() as usize
    }
}

pub(crate) fn first_failure(p: &MigrativePair<'_>, clauses: &[Clause]) -> Option<ConditionFailure> {
    clauses.iter().find_map(|c| c.first_failure(p))
}

/// `U₁(p, x) = U₂(α, x)` on the whole grid.
pub(crate) fn everywhere(p: &MigrativePair<'_>, pivot: usize) -> Vec<Clause> {
    vec![Clause::new(p, Term::Pivot(p.point(pivot)), Term::Base, 0, p.top())]
}

/// `U₂(α, x) = U₁(lo, x)` on `[0, cut]` and `U₁(hi, x)` on `[cut, 1]`.
pub(crate) fn piecewise(p: &MigrativePair<'_>, lo: usize, hi: usize, cut: usize) -> Vec<Clause> {
    vec![
        Clause::new(p, Term::Base, Term::Pivot(p.point(lo)), 0, cut),
        Clause::new(p, Term::Base, Term::Pivot(p.point(hi)), cut, p.top()),
    ]
}

/// `U₁(pivot, x) = U₁(cut, x)` on `[from, to]`.
pub(crate) fn pivot_agrees(p: &MigrativePair<'_>, pivot: usize, cut: usize, from: usize, to: usize) -> Clause {
    Clause::new(p, Term::Pivot(p.point(pivot)), Term::Pivot(p.point(cut)), from, to)
}
