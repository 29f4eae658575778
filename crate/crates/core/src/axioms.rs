//! Machine checks of the 2-uninorm axioms on exact tables: commutativity,
//! associativity, monotonicity, 2-neutral elements, and the structural
//! consequences every 2-uninorm must satisfy.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::operators::{NeutralTriple, OperatorTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("table is not a 2-uninorm with triple {triple}")]
    PreconditionViolated { triple: String },
    #[error("triple lives on n = {triple_n}, table on n = {table_n}")]
    GridMismatch { triple_n: u32, table_n: u32 },
}

/// Tables at or below this side length are scanned on the calling thread.
const PARALLEL_THRESHOLD: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CommutativityWitness {
    pub i: usize,
    pub j: usize,
}

impl CommutativityWitness {
    pub fn recheck(&self, t: &OperatorTable) -> bool {
        t.get(self.i, self.j) != t.get(self.j, self.i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl AssociativityWitness {
    pub fn recheck(&self, t: &OperatorTable) -> bool {
        t.get(t.get(self.x, self.y), self.z) != t.get(self.x, t.get(self.y, self.z))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    Row,
    Column,
}

/// Adjacent inversion: along `line` (a row or column index), the entry at
/// `at` exceeds the entry at `at + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonotonicityWitness {
    pub axis: Axis,
    pub line: usize,
    pub at: usize,
}

impl MonotonicityWitness {
    pub fn recheck(&self, t: &OperatorTable) -> bool {
        match self.axis {
            Axis::Row => t.get(self.line, self.at) > t.get(self.line, self.at + 1),
            Axis::Column => t.get(self.at, self.line) > t.get(self.at + 1, self.line),
        }
    }
}

pub fn check_commutative(t: &OperatorTable) -> Option<CommutativityWitness> {
    let size = t.size();
    (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .find(|&(i, j)| t.get(i, j) != t.get(j, i))
        .map(|(i, j)| CommutativityWitness { i, j })
}

fn assoc_violation_in_slab(t: &OperatorTable, x: usize) -> Option<AssociativityWitness> {
    let size = t.size();
    for y in 0..size {
        let xy = t.get(x, y);
        for z in 0..size {
            if t.get(xy, z) != t.get(x, t.get(y, z)) {
                return Some(AssociativityWitness { x, y, z });
            }
        }
    }
    None
}

/// Full `O(n³)` scan; the witness is the first violating `(x, y, z)` in
/// lexicographic order regardless of how the scan is partitioned.
pub fn check_associative(t: &OperatorTable) -> Option<AssociativityWitness> {
    let size = t.size();
    if size <= PARALLEL_THRESHOLD {
        (0..size).find_map(|x| assoc_violation_in_slab(t, x))
    } else {
        (0..size).into_par_iter().find_map_first(|x| assoc_violation_in_slab(t, x))
    }
}

/// Rows first, then columns; first adjacent inversion in scan order.
pub fn check_monotone(t: &OperatorTable) -> Option<MonotonicityWitness> {
    let size = t.size();
    for line in 0..size {
        for at in 0..size - 1 {
            if t.get(line, at) > t.get(line, at + 1) {
                return Some(MonotonicityWitness { axis: Axis::Row, line, at });
            }
        }
    }
    for line in 0..size {
        for at in 0..size - 1 {
            if t.get(at, line) > t.get(at + 1, line) {
                return Some(MonotonicityWitness {
                    axis: Axis::Column,
                    line,
                    at,
                });
            }
        }
    }
    None
}

/// Every 2-neutral element `{e, f}_a` of the table, in `(a, e, f)` order.
pub fn find_2neutral(t: &OperatorTable) -> Vec<NeutralTriple> {
    let size = t.size();
    let grid = t.grid();
    // prefix[e]: number of leading x with t(e, x) = x.
    let prefix: Vec<usize> = (0..size)
        .map(|e| (0..size).take_while(|&x| t.get(e, x) == x).count())
        .collect();
    // suffix_start[f]: smallest s with t(f, x) = x for all x >= s.
    let suffix_start: Vec<usize> = (0..size)
        .map(|f| size - (0..size).rev().take_while(|&x| t.get(f, x) == x).count())
        .collect();
    let mut out = Vec::new();
    for a in 0..size {
        for e in 0..=a {
            if prefix[e] <= a {
                continue;
            }
            for f in a..size {
                if suffix_start[f] <= a {
                    out.push(
                        NeutralTriple::from_indices(grid, e as u32, a as u32, f as u32)
                            .expect("indices ordered and on grid"),
                    );
                }
            }
        }
    }
    out
}

/// Direct test of the two identity families for one triple.
pub fn is_2neutral(t: &OperatorTable, triple: &NeutralTriple) -> bool {
    if triple.grid() != t.grid() {
        return false;
    }
    let (e, a, f) = triple.indices();
    (0..=a).all(|x| t.get(e, x) == x) && (a..t.size()).all(|x| t.get(f, x) == x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub commutative: Option<CommutativityWitness>,
    pub associative: Option<AssociativityWitness>,
    pub monotone: Option<MonotonicityWitness>,
    pub triples: Vec<NeutralTriple>,
}

impl AxiomReport {
    /// Commutative, associative and monotone (the triple list is separate).
    pub fn is_ok(&self) -> bool {
        self.commutative.is_none() && self.associative.is_none() && self.monotone.is_none()
    }

    pub fn failure_summary(&self) -> Option<String> {
        if let Some(w) = self.commutative {
            return Some(format!("not commutative at ({}, {})", w.i, w.j));
        }
        if let Some(w) = self.monotone {
            return Some(format!("not monotone: {:?} {} at {}", w.axis, w.line, w.at));
        }
        if let Some(w) = self.associative {
            return Some(format!("not associative at ({}, {}, {})", w.x, w.y, w.z));
        }
        None
    }
}

pub fn axiom_report(t: &OperatorTable) -> AxiomReport {
    AxiomReport {
        commutative: check_commutative(t),
        associative: check_associative(t),
        monotone: check_monotone(t),
        triples: find_2neutral(t),
    }
}

/// Commutative, associative, monotone, and carrying `triple` as a 2-neutral
/// element (or any 2-neutral element when `triple` is `None`).
pub fn is_2uninorm(t: &OperatorTable, triple: Option<&NeutralTriple>) -> bool {
    let neutral_ok = match triple {
        Some(tr) => is_2neutral(t, tr),
        None => !find_2neutral(t).is_empty(),
    };
    neutral_ok && check_commutative(t).is_none() && check_monotone(t).is_none() && check_associative(t).is_none()
}

/// The seven structural properties of a 2-uninorm with 2-neutral element
/// `{e, f}_a`:
///
/// 1. `U(x,y) = U(x,a)` on `[0,a]×[a,f]`
/// 2. `U(x,y) = U(a,y)` on `[a,f]×[0,a]`
/// 3. `U(x,y) = U(x,a)` on `[a,1]×[e,a]`
/// 4. `U(x,y) = U(a,y)` on `[e,a]×[a,1]`
/// 5. `min(x,y) ≤ U(x,y) ≤ a` on `[0,e]×[e,f] ∪ [e,f]×[0,e]`
/// 6. `a ≤ U(x,y) ≤ max(x,y)` on `[e,f]×[f,1] ∪ [f,1]×[e,f]`
/// 7. `U(x,y) ∈ [0,e) ∪ {a} ∪ (f,1]` on `[0,a]×[a,1] ∪ [a,1]×[0,a]`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructuralItem {
    LeftBlockConstant,
    RightBlockConstant,
    UpperLeftFactor,
    UpperRightFactor,
    LowerBand,
    UpperBand,
    MixedRange,
}

impl StructuralItem {
    pub const ALL: [StructuralItem; 7] = [
        StructuralItem::LeftBlockConstant,
        StructuralItem::RightBlockConstant,
        StructuralItem::UpperLeftFactor,
        StructuralItem::UpperRightFactor,
        StructuralItem::LowerBand,
        StructuralItem::UpperBand,
        StructuralItem::MixedRange,
    ];

    pub fn number(self) -> usize {
        Self::ALL.iter().position(|&i| i == self).unwrap() + 1
    }

    pub fn describe(self) -> &'static str {
        match self {
            StructuralItem::LeftBlockConstant => "U(x,y)=U(x,a) on [0,a]x[a,f]",
            StructuralItem::RightBlockConstant => "U(x,y)=U(a,y) on [a,f]x[0,a]",
            StructuralItem::UpperLeftFactor => "U(x,y)=U(x,a) on [a,1]x[e,a]",
            StructuralItem::UpperRightFactor => "U(x,y)=U(a,y) on [e,a]x[a,1]",
            StructuralItem::LowerBand => "min(x,y)<=U(x,y)<=a on [0,e]x[e,f] and [e,f]x[0,e]",
            StructuralItem::UpperBand => "a<=U(x,y)<=max(x,y) on [e,f]x[f,1] and [f,1]x[e,f]",
            StructuralItem::MixedRange => "U(x,y) in [0,e)+{a}+(f,1] on [0,a]x[a,1] and [a,1]x[0,a]",
        }
    }

    /// `None` when `(x, y)` is outside the item's region.
    pub fn holds_at(self, t: &OperatorTable, triple: &NeutralTriple, x: usize, y: usize) -> Option<bool> {
        let (e, a, f) = triple.indices();
        let top = t.size() - 1;
        let within = |v: usize, lo: usize, hi: usize| lo <= v && v <= hi;
        let u = t.get(x, y);
        match self {
            StructuralItem::LeftBlockConstant => {
                (within(x, 0, a) && within(y, a, f)).then(|| u == t.get(x, a))
            }
            StructuralItem::RightBlockConstant => {
                (within(x, a, f) && within(y, 0, a)).then(|| u == t.get(a, y))
            }
            StructuralItem::UpperLeftFactor => {
                (within(x, a, top) && within(y, e, a)).then(|| u == t.get(x, a))
            }
            StructuralItem::UpperRightFactor => {
                (within(x, e, a) && within(y, a, top)).then(|| u == t.get(a, y))
            }
            StructuralItem::LowerBand => {
                let region = (within(x, 0, e) && within(y, e, f)) || (within(x, e, f) && within(y, 0, e));
                region.then(|| x.min(y) <= u && u <= a)
            }
            StructuralItem::UpperBand => {
                let region = (within(x, e, f) && within(y, f, top)) || (within(x, f, top) && within(y, e, f));
                region.then(|| a <= u && u <= x.max(y))
            }
            StructuralItem::MixedRange => {
                let region = (within(x, 0, a) && within(y, a, top)) || (within(x, a, top) && within(y, 0, a));
                region.then_some(u < e || u == a || u > f)
            }
        }
    }
}

impl fmt::Display for StructuralItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralItemResult {
    pub item: StructuralItem,
    pub cells_checked: usize,
    /// First failing cell `(x, y)` in row-major order.
    pub witness: Option<(usize, usize)>,
}

impl StructuralItemResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub triple: NeutralTriple,
    pub items: Vec<StructuralItemResult>,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(StructuralItemResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StructuralItemResult> {
        self.items.iter().filter(|r| !r.passed())
    }
}

/// Scan without the 2-uninorm precondition; used by callers that have
/// already verified the table.
pub fn scan_structural_props(t: &OperatorTable, triple: &NeutralTriple) -> StructuralReport {
    let size = t.size();
    let items = StructuralItem::ALL
        .iter()
        .map(|&item| {
            let mut cells_checked = 0;
            let mut witness = None;
            'scan: for x in 0..size {
                for y in 0..size {
                    if let Some(ok) = item.holds_at(t, triple, x, y) {
                        cells_checked += 1;
                        if !ok {
                            witness = Some((x, y));
                            break 'scan;
                        }
                    }
                }
            }
            StructuralItemResult {
                item,
                cells_checked,
                witness,
            }
        })
        .collect();
    StructuralReport { triple: *triple, items }
}

pub fn check_structural_props(t: &OperatorTable, triple: &NeutralTriple) -> Result<StructuralReport, AxiomError> {
    if triple.grid() != t.grid() {
        return Err(AxiomError::GridMismatch {
            triple_n: triple.grid().n(),
            table_n: t.grid().n(),
        });
    }
    if !is_2uninorm(t, Some(triple)) {
        return Err(AxiomError::PreconditionViolated {
            triple: triple.to_string(),
        });
    }
    Ok(scan_structural_props(t, triple))
}
