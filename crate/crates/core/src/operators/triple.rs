use std::fmt;

use serde::Serialize;

use crate::grid::{GridPoint, UnitGrid};

use super::{OperatorError, Result};

/// The data `(e, a, f)` of a 2-neutral element `{e, f}_a`, with
/// `0 ≤ e ≤ a ≤ f ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NeutralTriple {
    e: GridPoint,
    a: GridPoint,
    f: GridPoint,
}

impl NeutralTriple {
    pub fn new(e: GridPoint, a: GridPoint, f: GridPoint) -> Result<Self> {
        e.same_grid(a)?;
        a.same_grid(f)?;
        if e.index() > a.index() || a.index() > f.index() {
            return Err(OperatorError::TripleOrder {
                e: e.to_string(),
                a: a.to_string(),
                f: f.to_string(),
            });
        }
        Ok(NeutralTriple { e, a, f })
    }

    pub fn from_indices(grid: UnitGrid, e: u32, a: u32, f: u32) -> Result<Self> {
        NeutralTriple::new(grid.point(e)?, grid.point(a)?, grid.point(f)?)
    }

    /// Every triple on the grid, in lexicographic `(a, e, f)` order.
    pub fn all_on(grid: UnitGrid) -> Vec<NeutralTriple> {
        let n = grid.n();
        let mut out = Vec::new();
        for a in 0..=n {
            for e in 0..=a {
                for f in a..=n {
                    out.push(NeutralTriple::from_indices(grid, e, a, f).expect("ordered by construction"));
                }
            }
        }
        out
    }

    pub fn e(&self) -> GridPoint {
        self.e
    }

    pub fn a(&self) -> GridPoint {
        self.a
    }

    pub fn f(&self) -> GridPoint {
        self.f
    }

    pub fn grid(&self) -> UnitGrid {
        self.e.grid()
    }

    /// Index form `(e, a, f)`.
    pub fn indices(&self) -> (usize, usize, usize) {
        (
            self.e.index() as usize,
            self.a.index() as usize,
            self.f.index() as usize,
        )
    }

    /// Sort key for `(a, e, f)` order.
    pub fn sort_key(&self) -> (u32, u32, u32) {
        (self.a.index(), self.e.index(), self.f.index())
    }

    pub fn regrid(&self, grid: UnitGrid) -> Result<Self> {
        NeutralTriple::new(self.e.regrid(grid)?, self.a.regrid(grid)?, self.f.regrid(grid)?)
    }
}

impl fmt::Display for NeutralTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.e, self.a, self.f)
    }
}

/// Named subclasses of 2-uninorms, determined by the shape of a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubclassTag {
    TNorm,
    TConorm,
    Uninorm,
    Nullnorm,
    UniNullnorm,
    NullUninorm,
    General2Uninorm,
}

impl SubclassTag {
    pub const ALL: [SubclassTag; 7] = [
        SubclassTag::TNorm,
        SubclassTag::TConorm,
        SubclassTag::Uninorm,
        SubclassTag::Nullnorm,
        SubclassTag::UniNullnorm,
        SubclassTag::NullUninorm,
        SubclassTag::General2Uninorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubclassTag::TNorm => "t-norm",
            SubclassTag::TConorm => "t-conorm",
            SubclassTag::Uninorm => "uninorm",
            SubclassTag::Nullnorm => "nullnorm",
            SubclassTag::UniNullnorm => "uni-nullnorm",
            SubclassTag::NullUninorm => "null-uninorm",
            SubclassTag::General2Uninorm => "2-uninorm",
        }
    }
}

impl fmt::Display for SubclassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies a triple, first match wins:
///
/// | tag | condition |
/// |---|---|
/// | TConorm | e = a = f = 0 |
/// | TNorm | e = a = f = 1 |
/// | Uninorm | e = a = f, or a = f = 1, or e = a = 0 |
/// | Nullnorm | e = 0, f = 1, 0 < a < 1 |
/// | UniNullnorm | f = 1, a < 1 |
/// | NullUninorm | e = 0, a > 0 |
/// | General2Uninorm | otherwise |
pub fn classify(triple: &NeutralTriple) -> SubclassTag {
    let n = triple.grid().n() as usize;
    let (e, a, f) = triple.indices();
    if e == 0 && a == 0 && f == 0 {
        SubclassTag::TConorm
    } else if e == n && a == n && f == n {
        SubclassTag::TNorm
    } else if (e == a && a == f) || (a == n && f == n) || (e == 0 && a == 0) {
        SubclassTag::Uninorm
    } else if e == 0 && f == n && a > 0 && a < n {
        SubclassTag::Nullnorm
    } else if f == n && a < n {
        SubclassTag::UniNullnorm
    } else if e == 0 && a > 0 {
        SubclassTag::NullUninorm
    } else {
        SubclassTag::General2Uninorm
    }
}

/// Neutral element of a uninorm-shaped triple: `e` for `(e,e,e)` and
/// `(e,1,1)`, `f` for `(0,0,f)`.
pub fn uninorm_neutral(triple: &NeutralTriple) -> Option<GridPoint> {
    let n = triple.grid().n() as usize;
    let (e, a, f) = triple.indices();
    if e == a && a == f || (a == n && f == n) {
        Some(triple.e())
    } else if e == 0 && a == 0 {
        Some(triple.f())
    } else {
        None
    }
}
