//! Command dispatch.

use std::time::Instant;

use serde_json::{json, Map, Value};
use thiserror::Error;
use twouni_core::axioms::{axiom_report, find_2neutral, scan_structural_props};
use twouni_core::chain_enum::{census, census_audit, enumerate_2uninorms, CensusAudit, CensusLimits, EnumJob};
use twouni_core::migrativity::{
    audit_pair, brute_force_migrative, characterize_thm31, characterize_thm32, corollary_dispatch, lambda_mu,
    MigrativePair, MigrativityVerdict, Route, TwoUninorm,
};
use twouni_core::operators::{discretize, discretize_f64};
use twouni_core::{GridPoint, Mode, OperatorTable, ToleranceConfig, UnitGrid};

use crate::config::{Command, ConfigError, ResolvedOperator, RunConfig};
use crate::report::{Report, Table};

const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Failed(String),
}

fn usage(message: impl Into<String>) -> RunError {
    RunError::Config(ConfigError::Validation {
        line: None,
        message: message.into(),
    })
}

fn required<'a>(v: &'a Option<crate::config::Located<String>>, key: &str, cmd: Command) -> Result<&'a str, RunError> {
    v.as_ref()
        .map(|l| l.value.as_str())
        .ok_or_else(|| usage(format!("command '{cmd}' needs '{key}'")))
}

/// An operator on the grid together with the 2-neutral element it is used
/// with.
struct Built {
    op: ResolvedOperator,
    two: Result<TwoUninorm, String>,
}

impl Built {
    fn triple_text(&self) -> Value {
        match &self.two {
            Ok(u) => u.triple().to_string().into(),
            Err(_) => Value::Null,
        }
    }
}

/// Chooses the triple: the one given in the config, else the family's own,
/// else the first 2-neutral element found in the table.
fn build(cfg: &RunConfig, name: &str, grid: UnitGrid) -> Result<Built, RunError> {
    let op = cfg.resolve(name)?;
    let table = match discretize(&op.spec, grid) {
        Ok(t) => t,
        Err(e) => {
            return Ok(Built {
                op,
                two: Err(e.to_string()),
            })
        }
    };
    let triple = match op.triple {
        Some(t) => Some(t),
        None => match op.spec.natural_triple_on(grid) {
            Some(t) => Some(t.map_err(|e| RunError::Failed(format!("operator '{name}': {e}")))?),
            None => find_2neutral(&table).into_iter().next(),
        },
    };
    let two = match triple {
        Some(t) => TwoUninorm::new(table, t).map_err(|e| e.to_string()),
        None => Err("no 2-neutral element".to_string()),
    };
    Ok(Built { op, two })
}

fn describe(op: &ResolvedOperator) -> Value {
    let params: Vec<Value> = op
        .spec
        .parameters()
        .into_iter()
        .map(|(k, v)| json!([k, twouni_core::grid::format_rational(v)]))
        .collect();
    json!({
        "name": op.name,
        "family": op.spec.family_name(),
        "parameters": params,
        "triple": op.triple.map(|t| t.to_string()),
    })
}

fn echo(cfg: &RunConfig, command: Command, grid: UnitGrid) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("grid".into(), grid.n().into());
    m.insert(
        "mode".into(),
        match cfg.mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
        .into(),
    );
    m.insert("command".into(), command.name().into());
    for (key, v) in [("operator", &cfg.operator), ("u1", &cfg.u1), ("u2", &cfg.u2)] {
        if let Some(v) = v {
            if let Ok(op) = cfg.resolve(&v.value) {
                m.insert(key.into(), describe(&op));
            }
        }
    }
    if let Some(a) = &cfg.alpha {
        m.insert("alpha".into(), twouni_core::grid::format_rational(a.value).into());
    }
    if let Ok(Some(t)) = cfg.run_triple() {
        m.insert("triple".into(), t.to_string().into());
    }
    if let Some(b) = cfg.budget {
        m.insert("budget_s".into(), json!(b.as_secs_f64()));
    }
    if let Some(j) = cfg.jobs {
        m.insert("jobs".into(), j.into());
    }
    m
}

/// Runs the configured command. `Err` means the request itself was unusable;
/// failed checks are reported through [`Report::failed`].
pub fn run_command(cfg: &RunConfig) -> Result<Report, RunError> {
    let start = Instant::now();
    let command = cfg
        .command
        .ok_or_else(|| usage("no command given (set 'command' in [run] or pass --command)"))?;
    let grid = cfg.grid()?;
    cfg.validate()?;
    if cfg.mode == Mode::Float && command != Command::Heatmap {
        return Err(usage(format!("float mode is only available for heatmap, not '{command}'")));
    }
    let mut report = Report::new(command, echo(cfg, command, grid));
    match command {
        Command::Verify => verify(cfg, grid, &mut report)?,
        Command::Migrative => migrative(cfg, grid, &mut report)?,
        Command::Sweep => sweep(cfg, grid, &mut report)?,
        Command::Enumerate => enumerate(cfg, grid, &mut report)?,
        Command::Audit => {
            let a = census_audit(grid, &limits(cfg)).map_err(|e| usage(e.to_string()))?;
            fill_audit_report(&a, &mut report);
        }
        Command::Heatmap => heatmap(cfg, grid, &mut report)?,
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn limits(cfg: &RunConfig) -> CensusLimits {
    CensusLimits {
        budget: cfg.budget,
        jobs: cfg.jobs,
        ..CensusLimits::default()
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(cfg: &RunConfig, grid: UnitGrid, r: &mut Report) -> Result<(), RunError> {
    let name = cfg
        .operator
        .as_ref()
        .or(cfg.u1.as_ref())
        .map(|l| l.value.clone())
        .ok_or_else(|| usage("command 'verify' needs 'operator'"))?;
    let op = cfg.resolve(&name)?;
    r.table = Table::with_columns(&["check", "result", "detail"]);
    let table = match discretize(&op.spec, grid) {
        Ok(t) => t,
        Err(e) => {
            r.record(
                "check",
                json!({"operator": op.name, "check": "construct", "passed": false, "detail": e.to_string()}),
            );
            r.table.push(vec!["construct".into(), "FAIL".into(), e.to_string()]);
            r.summary.insert("operator".into(), op.name.clone().into());
            r.summary.insert("is_2uninorm".into(), false.into());
            r.failed = true;
            return Ok(());
        }
    };
    let axioms = axiom_report(&table);

    let mut ok = true;
    let mut check = |r: &mut Report, name: &str, passed: bool, witness: Value, detail: String| {
        ok &= passed;
        r.record(
            "check",
            json!({"operator": op.name, "check": name, "passed": passed, "witness": witness}),
        );
        r.table.push(vec![name.to_string(), pass(passed).to_string(), detail]);
    };
    let w = |v: Option<Value>| v.unwrap_or(Value::Null);
    check(
        r,
        "commutative",
        axioms.commutative.is_none(),
        w(axioms.commutative.map(|c| json!(c))),
        axioms.commutative.map(|c| format!("at ({}, {})", c.i, c.j)).unwrap_or_default(),
    );
    check(
        r,
        "associative",
        axioms.associative.is_none(),
        w(axioms.associative.map(|c| json!(c))),
        axioms
            .associative
            .map(|c| format!("at ({}, {}, {})", c.x, c.y, c.z))
            .unwrap_or_default(),
    );
    check(
        r,
        "monotone",
        axioms.monotone.is_none(),
        w(axioms.monotone.map(|c| json!(c))),
        axioms
            .monotone
            .map(|c| format!("{} {} at {}", format!("{:?}", c.axis).to_lowercase(), c.line, c.at))
            .unwrap_or_default(),
    );

    let expected = match op.triple.or(cfg.run_triple()?) {
        Some(t) => Some(t),
        None => match op.spec.natural_triple_on(grid) {
            Some(t) => Some(t.map_err(|e| RunError::Failed(format!("operator '{name}': {e}")))?),
            None => None,
        },
    };
    let found: Vec<String> = axioms.triples.iter().map(|t| t.to_string()).collect();
    let neutral_ok = match &expected {
        Some(t) => axioms.triples.contains(t),
        None => !axioms.triples.is_empty(),
    };
    check(
        r,
        "2-neutral",
        neutral_ok,
        json!({"expected": expected.map(|t| t.to_string()), "found": found}),
        format!(
            "found {}{}",
            if found.is_empty() { "none".to_string() } else { found.join(" ") },
            expected.map(|t| format!(", expected {t}")).unwrap_or_default()
        ),
    );

    let triple = expected.or_else(|| axioms.triples.first().copied());
    let is_two = axioms.is_ok() && neutral_ok;
    if let (true, Some(t)) = (is_two, triple) {
        for item in scan_structural_props(&table, &t).items {
            let label = format!("structural {}", item.item.number());
            let detail = item.item.describe().to_string();
            let witness = item.witness.map(|c| json!(c)).unwrap_or(Value::Null);
            check(r, &label, item.passed(), witness, detail);
        }
    }
    r.summary.insert("operator".into(), op.name.clone().into());
    r.summary.insert("is_2uninorm".into(), is_two.into());
    r.summary.insert("triple".into(), triple.map(|t| t.to_string()).into());
    r.failed = !ok;
    Ok(())
}

fn route_parts(route: Route) -> (String, String) {
    match route {
        Route::BruteForce => ("brute-force".into(), String::new()),
        Route::Thm31(c) => ("lambda-split".into(), c.to_string()),
        Route::Thm32(c) => ("mu-split".into(), c.to_string()),
        Route::Corollary(item, b) => ("corollary".into(), format!("{item} bullet {b}")),
    }
}

fn verdict_word(m: bool) -> &'static str {
    if m {
        "migrative"
    } else {
        "not migrative"
    }
}

fn verdict_record(u1: &Built, u2: &Built, alpha: GridPoint, v: &MigrativityVerdict) -> Value {
    let (route, case) = route_parts(v.route);
    json!({
        "procedure": route,
        "case": case,
        "u1": u1.op.name,
        "triple1": u1.triple_text(),
        "u2": u2.op.name,
        "triple2": u2.triple_text(),
        "alpha": alpha.to_string(),
        "migrative": v.migrative,
        "case_conditions": v.case_conditions,
        "witness": v.witness,
        "condition_failure": v.condition_failure,
    })
}

fn pair_operands(cfg: &RunConfig, grid: UnitGrid, command: Command, r: &mut Report) -> Result<Option<(Built, Built)>, RunError> {
    let u1 = build(cfg, required(&cfg.u1, "u1", command)?, grid)?;
    let u2 = build(cfg, required(&cfg.u2, "u2", command)?, grid)?;
    let mut usable = true;
    for b in [&u1, &u2] {
        if let Err(e) = &b.two {
            usable = false;
            r.record("check", json!({"operator": b.op.name, "check": "2-uninorm", "passed": false, "detail": e}));
            r.table.push(vec![b.op.name.clone(), "FAIL".into(), format!("not a 2-uninorm: {e}")]);
        }
    }
    if !usable {
        r.failed = true;
        return Ok(None);
    }
    Ok(Some((u1, u2)))
}

fn migrative(cfg: &RunConfig, grid: UnitGrid, r: &mut Report) -> Result<(), RunError> {
    let alpha = cfg
        .alpha
        .as_ref()
        .ok_or_else(|| usage("command 'migrative' needs 'alpha'"))?;
    let alpha = grid
        .index_of(alpha.value)
        .and_then(|i| grid.point(i))
        .map_err(|e| usage(e.to_string()))?;
    r.table = Table::with_columns(&["procedure", "verdict", "route", "case"]);
    let Some((u1, u2)) = pair_operands(cfg, grid, Command::Migrative, r)? else {
        return Ok(());
    };
    let (a, b) = (u1.two.as_ref().unwrap(), u2.two.as_ref().unwrap());
    let p = MigrativePair::new(a, b, alpha).map_err(|e| RunError::Failed(e.to_string()))?;

    let lm = lambda_mu(&p);
    r.record("pivots", json!({"alpha": alpha.to_string(), "lambda": lm.lambda.to_string(), "mu": lm.mu.to_string()}));

    let brute = brute_force_migrative(&p);
    let mut verdicts = vec![brute.clone(), characterize_thm31(&p), characterize_thm32(&p)];
    let corollary = corollary_dispatch(&p).ok();
    verdicts.extend(corollary);

    let mut disagreements = 0;
    for v in &verdicts {
        let (route, case) = route_parts(v.route);
        r.record("verdict", verdict_record(&u1, &u2, alpha, v));
        r.table.push(vec![route, verdict_word(v.migrative).into(), v.route.to_string(), case]);
        disagreements += usize::from(v.migrative != brute.migrative);
    }

    // Every applicable case at a boundary, each decided on its own.
    let audit = audit_pair(&p);
    for (theorem, cases) in [("lambda-split", &audit.thm31), ("mu-split", &audit.thm32)] {
        for (case, verdict) in cases {
            disagreements += usize::from(*verdict != brute.migrative);
            r.record(
                "case",
                json!({"procedure": theorem, "case": case.to_string(), "migrative": verdict, "agrees": *verdict == brute.migrative}),
            );
        }
    }

    r.summary.insert("migrative".into(), brute.migrative.into());
    r.summary.insert("disagreements".into(), disagreements.into());
    r.failed = disagreements > 0;
    Ok(())
}

/// Groups grid indices into maximal runs and writes them the way the
/// usual interval notation reads: `{0.7}`, `(0.8, 1]`, `[0, 0.2]`.
pub fn interval_notation(grid: UnitGrid, indices: &[u32]) -> String {
    let mut runs: Vec<(u32, u32)> = Vec::new();
    for &i in indices {
        match runs.last_mut() {
            Some((_, hi)) if *hi + 1 == i => *hi = i,
            _ => runs.push((i, i)),
        }
    }
    let pt = |i: u32| grid.point(i).expect("grid index").to_string();
    let parts: Vec<String> = runs
        .into_iter()
        .map(|(lo, hi)| match (lo, hi) {
            (lo, hi) if lo == hi => format!("{{{}}}", pt(lo)),
            (0, hi) => format!("[{}, {}]", pt(0), pt(hi)),
            (lo, hi) => format!("({}, {}]", pt(lo - 1), pt(hi)),
        })
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" U ")
    }
}

fn sweep(cfg: &RunConfig, grid: UnitGrid, r: &mut Report) -> Result<(), RunError> {
    r.table = Table::with_columns(&["alpha", "verdict", "route", "case"]);
    let Some((u1, u2)) = pair_operands(cfg, grid, Command::Sweep, r)? else {
        return Ok(());
    };
    r.table = Table::with_columns(&["alpha", "verdict", "route", "case"]);
    r.notes.push(format!(
        "alpha ranges over the closed grid {{0, 1/{n}, ..., 1}}; an interval (p, q] in the summary means the grid points in it",
        n = grid.n()
    ));
    let (a, b) = (u1.two.as_ref().unwrap(), u2.two.as_ref().unwrap());
    let mut set = Vec::new();
    let mut disagreements = 0;
    for alpha in grid.carrier() {
        let p = MigrativePair::new(a, b, alpha).map_err(|e| RunError::Failed(e.to_string()))?;
        let brute = brute_force_migrative(&p);
        let t31 = characterize_thm31(&p);
        let t32 = characterize_thm32(&p);
        let agree = brute.migrative == t31.migrative && brute.migrative == t32.migrative;
        disagreements += usize::from(!agree);
        if brute.migrative {
            set.push(alpha.index());
        }
        let (_, c31) = route_parts(t31.route);
        let (_, c32) = route_parts(t32.route);
        r.record(
            "sweep",
            json!({
                "u1": u1.op.name,
                "triple1": u1.triple_text(),
                "u2": u2.op.name,
                "triple2": u2.triple_text(),
                "alpha": alpha.to_string(),
                "migrative": brute.migrative,
                "lambda_split": {"case": c31, "migrative": t31.migrative, "condition_failure": t31.condition_failure},
                "mu_split": {"case": c32, "migrative": t32.migrative, "condition_failure": t32.condition_failure},
                "witness": brute.witness,
                "agree": agree,
            }),
        );
        r.table.push(vec![
            alpha.to_string(),
            verdict_word(brute.migrative).into(),
            "lambda-split|mu-split".into(),
            format!("{c31}|{c32}"),
        ]);
    }
    let values: Vec<String> = set.iter().map(|&i| grid.point(i).unwrap().to_string()).collect();
    r.summary.insert("migrative_alpha".into(), json!(values));
    r.summary.insert("intervals".into(), interval_notation(grid, &set).into());
    r.summary.insert("disagreements".into(), disagreements.into());
    r.failed = disagreements > 0;
    Ok(())
}

fn enumerate(cfg: &RunConfig, grid: UnitGrid, r: &mut Report) -> Result<(), RunError> {
    r.table = Table::with_columns(&["triple", "count", "complete"]);
    let rows_of = |t: &OperatorTable| -> Vec<Vec<String>> {
        t.rows().map(|row| row.iter().map(|&v| grid.point(u32::from(v)).unwrap().to_string()).collect()).collect()
    };
    let lim = limits(cfg);
    let mut total = 0u64;
    let (stats, complete, final_check) = match cfg.run_triple()? {
        Some(triple) => {
            let job = EnumJob::with_size_cap(triple, lim.size_cap)
                .map_err(|e| usage(e.to_string()))?
                .budget(lim.budget);
            let e = enumerate_2uninorms(&job);
            total = e.tables.len() as u64;
            r.record("triple", json!({"triple": triple.to_string(), "count": total, "complete": e.is_complete()}));
            r.table.push(vec![triple.to_string(), total.to_string(), e.is_complete().to_string()]);
            for t in &e.tables {
                r.record("table", json!({"triple": triple.to_string(), "rows": rows_of(t)}));
            }
            (e.stats, e.is_complete(), e.stats.pruned_by.final_check)
        }
        None => {
            let c = census(grid, &lim).map_err(|e| usage(e.to_string()))?;
            for (t, count) in &c.per_triple {
                total += count;
                r.record("triple", json!({"triple": t.to_string(), "count": count}));
                r.table.push(vec![t.to_string(), count.to_string(), String::new()]);
            }
            for u in &c.entries {
                r.record("table", json!({"triple": u.triple().to_string(), "rows": rows_of(u.table())}));
            }
            (c.stats, c.complete, c.stats.pruned_by.final_check)
        }
    };
    r.summary.insert("tables".into(), total.into());
    r.summary.insert("complete".into(), complete.into());
    r.summary.insert("stats".into(), json!(stats));
    if !complete {
        r.notes.push("enumeration stopped early; counts cover the finished portion only".into());
    }
    r.failed = final_check > 0;
    Ok(())
}

/// Turns a census audit into a report. Separate from [`run_command`] so a
/// hand-built audit can be serialized.
pub fn fill_audit_report(a: &CensusAudit, r: &mut Report) {
    r.table = Table::with_columns(&["metric", "value"]);
    for (t, c) in &a.per_triple {
        r.record("triple", json!({"triple": t, "count": c}));
    }
    let au = &a.audit;
    let tally = |r: &mut Report, name: &str, checked: u64, applicable: u64, violations: u64| {
        r.record(
            "tally",
            json!({"check": name, "checked": checked, "applicable": applicable, "violations": violations}),
        );
        r.table.push(vec![format!("{name} violations"), violations.to_string()]);
    };
    tally(r, "lambda-split", au.thm31.checked, au.thm31.applicable, au.thm31.violations);
    tally(r, "mu-split", au.thm32.checked, au.thm32.applicable, au.thm32.violations);
    for (item, t) in &au.corollary {
        tally(r, &format!("corollary {item}"), t.checked, t.applicable, t.violations);
    }
    tally(r, "pivot implications", au.lemma31.checked, au.lemma31.applicable, au.lemma31.violations);
    tally(r, "pivot bound at a1", au.lemma32.checked, au.lemma32.applicable, au.lemma32.violations);
    tally(r, "lambda-interval condition", au.prop31.checked, au.prop31.applicable, au.prop31.violations);
    tally(r, "mu-interval condition", au.prop33.checked, au.prop33.applicable, au.prop33.violations);
    tally(r, "post-definition identity", au.post_identity.checked, au.post_identity.applicable, au.post_identity.violations);
    tally(r, "pivot order", au.pivot_order.checked, au.pivot_order.applicable, au.pivot_order.violations);
    tally(r, "structural", a.structural.tables, a.structural.tables, a.structural.failures);
    for d in &au.disagreements {
        r.record("disagreement", json!(d));
    }
    for v in &au.violations {
        r.record("violation", json!(v));
    }
    for (k, v) in [
        ("census_size", a.census_size),
        ("pairs_planned", a.pairs_planned),
        ("pairs_checked", au.pairs),
        ("migrative", au.migrative),
        ("lambda_boundary", au.thm31_boundary),
        ("mu_boundary", au.thm32_boundary),
        ("disagreements", au.disagreement_count),
        ("violations", au.violation_count),
        ("structural_failures", a.structural.failures),
    ] {
        r.summary.insert(k.into(), v.into());
        r.table.push(vec![k.replace('_', " "), v.to_string()]);
    }
    r.summary.insert("complete".into(), a.complete.into());
    r.summary.insert("enum_stats".into(), json!(a.enum_stats));
    if !a.complete {
        r.notes.push(format!(
            "budget exhausted: {} of {} rows audited; tallies cover the finished rows",
            a.rows_completed, a.census_size
        ));
    }
    r.failed = !au.is_clean() || a.structural.failures > 0;
}

fn heatmap(cfg: &RunConfig, grid: UnitGrid, r: &mut Report) -> Result<(), RunError> {
    let name = cfg
        .operator
        .as_ref()
        .or(cfg.u1.as_ref())
        .map(|l| l.value.clone())
        .ok_or_else(|| usage("command 'heatmap' needs 'operator'"))?;
    let op = cfg.resolve(&name)?;
    let rows: Vec<Vec<String>> = match cfg.mode {
        Mode::Exact => {
            let t = discretize(&op.spec, grid).map_err(|e| RunError::Failed(format!("operator '{name}': {e}")))?;
            t.rows()
                .map(|row| row.iter().map(|&v| grid.point(u32::from(v)).unwrap().to_string()).collect())
                .collect()
        }
        Mode::Float => {
            let tol = ToleranceConfig::float(cfg.eps.unwrap_or(DEFAULT_EPS)).map_err(|e| usage(e.to_string()))?;
            discretize_f64(&op.spec, grid, tol)
                .map_err(|e| RunError::Failed(format!("operator '{name}': {e}")))?
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.to_string()).collect())
                .collect()
        }
    };
    for (x, row) in grid.carrier().zip(&rows) {
        r.record("row", json!({"x": x.to_string(), "values": row}));
    }
    r.notes.push("row i, column j holds U(i/n, j/n)".into());
    r.summary.insert("operator".into(), name.into());
    r.summary.insert("size".into(), rows.len().into());
    r.table = Table { columns: None, rows };
    Ok(())
}
