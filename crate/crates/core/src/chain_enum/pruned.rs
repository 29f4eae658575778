use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{EnumJob, EnumStats, Enumeration, StopReason};
use crate::axioms;
use crate::operators::{NeutralTriple, OperatorTable};

const UNSET: u16 = u16::MAX;

#[derive(Clone)]
struct Board {
    m: usize,
    cells: Vec<u16>,
}

impl Board {
    #[inline]
    fn get(&self, i: usize, j: usize) -> u16 {
        self.cells[i * self.m + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u16) {
        self.cells[i * self.m + j] = v;
        self.cells[j * self.m + i] = v;
    }

    /// Tightest interval allowed by the nearest filled cells in row `i` and
    /// column `j`.
    fn bounds(&self, i: usize, j: usize) -> (u16, u16) {
        let mut lo = 0;
        let mut hi = (self.m - 1) as u16;
        if let Some(v) = (0..j).rev().map(|k| self.get(i, k)).find(|&v| v != UNSET) {
            lo = lo.max(v);
        }
        if let Some(v) = (j + 1..self.m).map(|k| self.get(i, k)).find(|&v| v != UNSET) {
            hi = hi.min(v);
        }
        if let Some(v) = (0..i).rev().map(|k| self.get(k, j)).find(|&v| v != UNSET) {
            lo = lo.max(v);
        }
        if let Some(v) = (i + 1..self.m).map(|k| self.get(k, j)).find(|&v| v != UNSET) {
            hi = hi.min(v);
        }
        (lo, hi)
    }

    /// Every fully determined instance of associativity holds.
    fn associative_so_far(&self) -> bool {
        let m = self.m;
        for x in 0..m {
            for y in 0..m {
                let xy = self.get(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..m {
                    let yz = self.get(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    let l = self.get(xy as usize, z);
                    let r = self.get(x, yz as usize);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every pair of adjacent filled cells is ordered.
    fn monotone_so_far(&self) -> bool {
        let m = self.m;
        for i in 0..m {
            for j in 0..m {
                let v = self.get(i, j);
                if v == UNSET {
                    continue;
                }
                if j + 1 < m && self.get(i, j + 1) != UNSET && v > self.get(i, j + 1) {
                    return false;
                }
                if i + 1 < m && self.get(i + 1, j) != UNSET && v > self.get(i + 1, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Prefills the neutral rows. `None` if they contradict each other.
fn prefill(triple: &NeutralTriple) -> Option<(Board, u64)> {
    let m = triple.grid().len();
    let (e, a, f) = triple.indices();
    let mut b = Board {
        m,
        cells: vec![UNSET; m * m],
    };
    let rows = (0..=a).map(|x| (e, x)).chain((a..m).map(|x| (f, x)));
    for (r, x) in rows {
        match b.get(r, x) {
            UNSET => b.set(r, x, x as u16),
            v if v as usize == x => {}
            _ => return None,
        }
    }
    let fixed = (0..m)
        .flat_map(|i| (i..m).map(move |j| (i, j)))
        .filter(|&(i, j)| b.get(i, j) != UNSET)
        .count();
    Some((b, fixed as u64))
}

struct Search<'a> {
    board: Board,
    free: &'a [(usize, usize)],
    triple: &'a NeutralTriple,
    stats: EnumStats,
    out: Vec<OperatorTable>,
    cap: u64,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    reason: Option<StopReason>,
}

impl Search<'_> {
    fn halted(&mut self) -> bool {
        if self.reason.is_some() {
            return true;
        }
        if self.stop.load(Ordering::Relaxed) {
            self.reason = Some(StopReason::TimeBudget);
            return true;
        }
        if self.stats.nodes_explored.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                    self.reason = Some(StopReason::TimeBudget);
                    return true;
                }
            }
        }
        false
    }

    fn run(&mut self, depth: usize) {
        if self.halted() {
            return;
        }
        let Some(&(i, j)) = self.free.get(depth) else {
            self.emit();
            return;
        };
        let (lo, hi) = self.board.bounds(i, j);
        let m = self.board.m as u64;
        self.stats.pruned_by.monotonicity += m - (hi as u64 + 1).saturating_sub(lo as u64);
        for v in lo..=hi {
            self.board.set(i, j, v);
            self.stats.nodes_explored += 1;
            if self.board.associative_so_far() {
                self.run(depth + 1);
            } else {
                self.stats.pruned_by.associativity += 1;
            }
            if self.reason.is_some() {
                break;
            }
        }
        self.board.set(i, j, UNSET);
    }

    fn emit(&mut self) {
        let grid = self.triple.grid();
        let table = OperatorTable::from_fn(grid, |x, y| self.board.get(x, y) as usize);
        if !axioms::is_2uninorm(&table, Some(self.triple)) {
            self.stats.pruned_by.final_check += 1;
            return;
        }
        if self.stats.tables_emitted >= self.cap {
            self.reason = Some(StopReason::TableCap);
            return;
        }
        self.stats.tables_emitted += 1;
        self.out.push(table);
    }
}

/// Emits every table on the job's grid that is a 2-uninorm with the job's
/// triple. Subtrees under the first free cell run in parallel and are merged
/// in value order, so output does not depend on the worker count.
pub fn enumerate_2uninorms(job: &EnumJob) -> Enumeration {
    let triple = *job.triple();
    let m = job.grid().len();
    let mut stats = EnumStats::default();
    stats.pruned_by.commutativity = (m * (m - 1) / 2) as u64;

    let Some((board, fixed)) = prefill(&triple) else {
        return Enumeration {
            tables: Vec::new(),
            stats,
            stop: None,
        };
    };
    stats.pruned_by.neutral_rows = fixed;
    if !board.monotone_so_far() || !board.associative_so_far() {
        return Enumeration {
            tables: Vec::new(),
            stats,
            stop: None,
        };
    }

    let free: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i..m).map(move |j| (i, j)))
        .filter(|&(i, j)| board.get(i, j) == UNSET)
        .collect();
    let stop = AtomicBool::new(false);
    let deadline = job.deadline();
    let search = |board: Board, depth: usize| {
        let mut s = Search {
            board,
            free: &free,
            triple: &triple,
            stats: EnumStats::default(),
            out: Vec::new(),
            cap: job.max_tables,
            deadline,
            stop: &stop,
            reason: None,
        };
        s.run(depth);
        (s.out, s.stats, s.reason)
    };

    let parts: Vec<_> = match free.first() {
        None => vec![search(board, 0)],
        Some(&(i, j)) => {
            let (lo, hi) = board.bounds(i, j);
            stats.pruned_by.monotonicity += m as u64 - (hi as u64 + 1).saturating_sub(lo as u64);
            (lo..=hi)
                .into_par_iter()
                .map(|v| {
                    let mut b = board.clone();
                    b.set(i, j, v);
                    if b.associative_so_far() {
                        let (out, mut st, reason) = search(b, 1);
                        st.nodes_explored += 1;
                        (out, st, reason)
                    } else {
                        let mut st = EnumStats::default();
                        st.nodes_explored = 1;
                        st.pruned_by.associativity = 1;
                        (Vec::new(), st, None)
                    }
                })
                .collect()
        }
    };

    let mut tables = Vec::new();
    let mut reason = None;
    for (out, st, r) in parts {
        stats.nodes_explored += st.nodes_explored;
        stats.pruned_by.merge(&st.pruned_by);
        tables.extend(out);
        if reason.is_none() {
            reason = r;
        }
    }
    // Each worker stops at the cap on its own, so the merged prefix is exact.
    if tables.len() as u64 > job.max_tables {
        tables.truncate(job.max_tables as usize);
        reason = Some(StopReason::TableCap);
    }
    stats.tables_emitted = tables.len() as u64;
    Enumeration {
        tables,
        stats,
        stop: reason,
    }
}
