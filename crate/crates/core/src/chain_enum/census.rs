use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_2uninorms, EnumError, EnumJob, EnumStats, DEFAULT_MAX_N, DEFAULT_MAX_TABLES};
use crate::axioms;
use crate::grid::UnitGrid;
use crate::migrativity::{AuditReport, MigrativePair, PairId, TwoUninorm};
use crate::operators::NeutralTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusLimits {
    pub budget: Option<Duration>,
    pub max_tables: u64,
    pub size_cap: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits {
            budget: None,
            max_tables: DEFAULT_MAX_TABLES,
            size_cap: DEFAULT_MAX_N,
            jobs: None,
        }
    }
}

/// Every (table, triple) with the table a 2-uninorm for that triple. A table
/// with several 2-neutral triples appears once per triple.
#[derive(Debug, Clone)]
pub struct Census {
    pub grid: UnitGrid,
    pub entries: Vec<TwoUninorm>,
    pub per_triple: Vec<(NeutralTriple, u64)>,
    pub stats: EnumStats,
    pub complete: bool,
}

fn remaining(deadline: Option<Instant>) -> Option<Duration> {
    deadline.map(|d| d.saturating_duration_since(Instant::now()))
}

fn build(grid: UnitGrid, limits: &CensusLimits, deadline: Option<Instant>) -> Result<Census, EnumError> {
    let mut triples = NeutralTriple::all_on(grid);
    triples.sort_by_key(|t| t.sort_key());
    let mut out = Census {
        grid,
        entries: Vec::new(),
        per_triple: Vec::new(),
        stats: EnumStats::default(),
        complete: true,
    };
    for triple in triples {
        let job = EnumJob::with_size_cap(triple, limits.size_cap)?
            .max_tables(limits.max_tables)
            .budget(remaining(deadline));
        let r = enumerate_2uninorms(&job);
        out.complete &= r.is_complete();
        out.stats.accumulate(&r.stats);
        out.per_triple.push((triple, r.tables.len() as u64));
        out.entries
            .extend(r.tables.into_iter().map(|t| TwoUninorm::new_verified(t, triple)));
        if !out.complete {
            break;
        }
    }
    Ok(out)
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Enumerates all 2-uninorms on the grid, triple by triple in `(e, a, f)`
/// order.
pub fn census(grid: UnitGrid, limits: &CensusLimits) -> Result<Census, EnumError> {
    let deadline = limits.budget.map(|b| Instant::now() + b);
    with_pool(limits.jobs, || build(grid, limits, deadline))
}

/// Results of running every structural property on every census table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StructuralTally {
    pub tables: u64,
    pub failures: u64,
    /// `(triple, item number)` of the first failures.
    pub examples: Vec<(String, usize)>,
}

impl StructuralTally {
    pub fn record(&mut self, u: &TwoUninorm) {
        self.tables += 1;
        let report = axioms::scan_structural_props(u.table(), u.triple());
        for item in report.failures() {
            self.failures += 1;
            if self.examples.len() < 100 {
                self.examples.push((u.triple().to_string(), item.item.number()));
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusAudit {
    pub n: u32,
    pub census_size: u64,
    pub per_triple: Vec<(String, u64)>,
    pub enumeration_complete: bool,
    pub enum_stats: EnumStats,
    pub pairs_planned: u64,
    /// Rows (choices of `U₁`) audited in full.
    pub rows_completed: u64,
    pub complete: bool,
    pub structural: StructuralTally,
    pub audit: AuditReport,
}

/// Audits every ordered pair of census entries at every grid `α`. Rows are
/// distributed across workers and merged in row order; under a budget the
/// rows that did not finish are skipped and the report is flagged.
pub fn census_audit(grid: UnitGrid, limits: &CensusLimits) -> Result<CensusAudit, EnumError> {
    let deadline = limits.budget.map(|b| Instant::now() + b);
    with_pool(limits.jobs, || {
        let census = build(grid, limits, deadline)?;
        let entries = &census.entries;
        let mut structural = StructuralTally::default();
        for u in entries {
            structural.record(u);
        }
        let rows: Vec<Option<AuditReport>> = (0..entries.len())
            .into_par_iter()
            .map(|i| {
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    return None;
                }
                let mut report = AuditReport::default();
                for (j, u2) in entries.iter().enumerate() {
                    for alpha in grid.carrier() {
                        let p = MigrativePair::new(&entries[i], u2, alpha).expect("same grid");
                        let id = PairId {
                            u1: i,
                            u2: j,
                            alpha: alpha.index(),
                        };
                        report.record(id, &p);
                    }
                }
                Some(report)
            })
            .collect();
        let mut audit = AuditReport::default();
        let mut rows_completed = 0;
        for r in rows.into_iter().flatten() {
            rows_completed += 1;
            audit.merge(r);
        }
        let size = entries.len() as u64;
        Ok(CensusAudit {
            n: grid.n(),
            census_size: size,
            per_triple: census.per_triple.iter().map(|(t, c)| (t.to_string(), *c)).collect(),
            enumeration_complete: census.complete,
            enum_stats: census.stats,
            pairs_planned: size * size * grid.len() as u64,
            rows_completed,
            complete: census.complete && rows_completed == size,
            structural,
            audit,
        })
    })
}
