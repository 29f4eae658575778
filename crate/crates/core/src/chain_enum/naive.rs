use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{EnumError, EnumJob, EnumStats, Enumeration, StopReason};
use crate::axioms;
use crate::grid::UnitGrid;
use crate::operators::OperatorTable;

/// Largest chain the naive generator accepts: `4^10` candidates at n = 3.
pub const NAIVE_MAX_N: u32 = 3;

/// Calls `visit` on every commutative table over the grid whose first
/// upper-triangle cell equals `first`, in lexicographic fill order. Stops
/// when `visit` returns false.
fn for_each_commutative(grid: UnitGrid, first: u16, mut visit: impl FnMut(OperatorTable) -> bool) -> bool {
    let m = grid.len();
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let mut digits = vec![0u16; cells.len()];
    digits[0] = first;
    loop {
        let mut entries = vec![0u16; m * m];
        for (&(i, j), &d) in cells.iter().zip(&digits) {
            entries[i * m + j] = d;
            entries[j * m + i] = d;
        }
        let table = OperatorTable::from_entries(grid, entries).expect("entries on grid");
        if !visit(table) {
            return false;
        }
        let mut k = cells.len() - 1;
        loop {
            if k == 0 {
                return true;
            }
            digits[k] += 1;
            if (digits[k] as usize) < m {
                break;
            }
            digits[k] = 0;
            k -= 1;
        }
    }
}

fn check_size(grid: UnitGrid) -> Result<(), EnumError> {
    if grid.n() > NAIVE_MAX_N {
        return Err(EnumError::GridTooLarge {
            n: grid.n(),
            cap: NAIVE_MAX_N,
        });
    }
    Ok(())
}

/// Generates every commutative table and keeps those that pass
/// [`axioms::is_2uninorm`] with the job's triple. No pruning.
pub fn enumerate_naive(job: &EnumJob) -> Result<Enumeration, EnumError> {
    let grid = job.grid();
    check_size(grid)?;
    let deadline = job.deadline();
    let mut stats = EnumStats::default();
    let mut tables = Vec::new();
    let mut stop = None;
    for first in 0..grid.len() as u16 {
        let finished = for_each_commutative(grid, first, |t| {
            stats.nodes_explored += 1;
            if stats.nodes_explored % 4096 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                stop = Some(StopReason::TimeBudget);
                return false;
            }
            if axioms::is_2uninorm(&t, Some(job.triple())) {
                if tables.len() as u64 >= job.max_tables {
                    stop = Some(StopReason::TableCap);
                    return false;
                }
                tables.push(t);
            }
            true
        });
        if !finished {
            break;
        }
    }
    stats.tables_emitted = tables.len() as u64;
    Ok(Enumeration { tables, stats, stop })
}

/// Every 2-uninorm on the grid, bucketed by each of its 2-neutral triples
/// (keyed by index triple). One pass over all commutative tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveCensus {
    pub by_triple: BTreeMap<(u32, u32, u32), Vec<OperatorTable>>,
    pub candidates: u64,
    pub complete: bool,
}

pub fn naive_census(grid: UnitGrid, budget: Option<Duration>) -> Result<NaiveCensus, EnumError> {
    check_size(grid)?;
    let deadline = budget.map(|b| Instant::now() + b);
    let parts: Vec<_> = (0..grid.len() as u16)
        .into_par_iter()
        .map(|first| {
            let mut found: Vec<((u32, u32, u32), OperatorTable)> = Vec::new();
            let mut seen = 0u64;
            let finished = for_each_commutative(grid, first, |t| {
                seen += 1;
                if seen.is_multiple_of(4096) && deadline.is_some_and(|d| Instant::now() >= d) {
                    return false;
                }
                if axioms::check_monotone(&t).is_none() && axioms::check_associative(&t).is_none() {
                    for triple in axioms::find_2neutral(&t) {
                        found.push((triple.sort_key(), t.clone()));
                    }
                }
                true
            });
            (found, seen, finished)
        })
        .collect();
    let mut out = NaiveCensus {
        by_triple: BTreeMap::new(),
        candidates: 0,
        complete: true,
    };
    for (found, seen, finished) in parts {
        out.candidates += seen;
        out.complete &= finished;
        for (key, t) in found {
            out.by_triple.entry(key).or_default().push(t);
        }
    }
    Ok(out)
}
