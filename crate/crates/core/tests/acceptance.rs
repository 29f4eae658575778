//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits non-zero when a criterion fails that is not listed in
//! `KNOWN_FAILURES`. Set `ACCEPTANCE_STRICT=1` to fail on any FAIL, and
//! `ACCEPTANCE_N4_BUDGET` (seconds, default 120) to bound the n = 4 audit.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twouni_core::axioms::{self, find_2neutral, is_2uninorm, scan_structural_props};
use twouni_core::chain_enum::{census, census_audit, enumerate_2uninorms, enumerate_naive, CensusLimits, EnumJob};
use twouni_core::migrativity::{
    audit_pair, brute_force_migrative, characterize_thm31, characterize_thm32, check_lemma31, corollary_dispatch,
    corollary_shape, CorollaryItem, MigrativePair, Outcome, Route, TwoUninorm,
};
use twouni_core::operators::{discretize, OperatorSpec, Param};
use twouni_core::{make_grid, NeutralTriple, UnitGrid};

/// The two implications of the unconditional pivot lemma have
/// counterexamples among the census operators (the example pair
/// included), so criterion 4 is reported as FAIL.
const KNOWN_FAILURES: &[usize] = &[4];

struct Check {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn two(spec: &OperatorSpec, grid: UnitGrid) -> Option<TwoUninorm> {
    let table = discretize(spec, grid).ok()?;
    let triple = spec.natural_triple_on(grid)?.ok()?;
    TwoUninorm::new(table, triple).ok()
}

fn r(p: i64, q: i64) -> Param {
    Param::new(p, q)
}

fn census_entries(n: u32) -> Vec<TwoUninorm> {
    let c = census(make_grid(n).unwrap(), &CensusLimits::default()).unwrap();
    assert!(c.complete);
    c.entries
}

fn pairs(entries: &[TwoUninorm]) -> impl Iterator<Item = MigrativePair<'_>> {
    let grid = entries[0].grid();
    entries.iter().flat_map(move |u1| {
        entries
            .iter()
            .flat_map(move |u2| grid.carrier().map(move |a| MigrativePair::new(u1, u2, a).unwrap()))
    })
}

fn criterion1() -> Check {
    let start = Instant::now();
    let g = make_grid(20).unwrap();
    let u1 = two(&OperatorSpec::example(r(1, 5), r(3, 5), r(4, 5)).unwrap(), g).unwrap();
    let u2 = two(&OperatorSpec::example(r(3, 10), r(1, 2), r(7, 10)).unwrap(), g).unwrap();
    let mut set = Vec::new();
    let mut agree = true;
    for a in g.carrier() {
        let p = MigrativePair::new(&u1, &u2, a).unwrap();
        let m = brute_force_migrative(&p).migrative;
        agree &= m == characterize_thm31(&p).migrative && m == characterize_thm32(&p).migrative;
        if m {
            set.push(a.index());
        }
    }
    let elapsed = start.elapsed();
    let values: Vec<String> = set.iter().map(|&i| g.point(i).unwrap().to_string()).collect();
    outcome(
        set == [14, 17, 18, 19, 20] && agree,
        format!("migrative at {{{}}}, characterizations agree: {agree}, {:.3}s", values.join(", "), elapsed.as_secs_f64()),
    )
}

fn criterion2() -> Check {
    let start = Instant::now();
    let a3 = census_audit(make_grid(3).unwrap(), &CensusLimits::default()).unwrap();
    let t3 = start.elapsed();
    let budget = std::env::var("ACCEPTANCE_N4_BUDGET")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(120.0);
    let limits = CensusLimits {
        budget: Some(Duration::from_secs_f64(budget)),
        ..CensusLimits::default()
    };
    let a4 = census_audit(make_grid(4).unwrap(), &limits).unwrap();
    let d = |a: &twouni_core::chain_enum::CensusAudit| a.audit.thm31.violations + a.audit.thm32.violations;
    let pass = a3.complete && a3.audit.pairs == a3.pairs_planned && d(&a3) == 0 && a3.audit.disagreement_count == 0
        && d(&a4) == 0
        && a4.audit.disagreement_count == 0;
    outcome(
        pass,
        format!(
            "n=3: {} entries, {} pairs, {} disagreements ({:.1}s); n=4: {}/{} rows, {} pairs, {} disagreements{}",
            a3.census_size,
            a3.audit.pairs,
            a3.audit.disagreement_count,
            t3.as_secs_f64(),
            a4.rows_completed,
            a4.census_size,
            a4.audit.pairs,
            a4.audit.disagreement_count,
            if a4.complete { "" } else { " (budget reached)" },
        ),
    )
}

#[derive(Default)]
struct Sweep {
    instances: u64,
    boundary31: u64,
    boundary32: u64,
    intra: u64,
    lemma31: u64,
    lemma31_example: Option<String>,
    lemma32: u64,
    prop31: u64,
    prop33: u64,
    applicable: [u64; 3],
}

/// One pass over every census pair for n ≤ 3, feeding criteria 3 to 5.
fn census_sweep(censuses: &[Vec<TwoUninorm>]) -> Sweep {
    let mut s = Sweep::default();
    for entries in censuses {
        for p in pairs(entries) {
            let a = audit_pair(&p);
            s.instances += 1;
            for (cases, boundary) in [(&a.thm31, &mut s.boundary31), (&a.thm32, &mut s.boundary32)] {
                if cases.len() > 1 {
                    *boundary += 1;
                    if cases.iter().any(|(_, v)| *v != cases[0].1) {
                        s.intra += 1;
                    }
                }
            }
            if a.lemma31 == Outcome::Violated {
                s.lemma31 += 1;
                if s.lemma31_example.is_none() {
                    let item = check_lemma31(&p).items.into_iter().find(|i| !i.holds()).unwrap();
                    s.lemma31_example = Some(format!(
                        "U2 {} with triple {}, U1 triple {}, alpha {}: {} fails ({})",
                        p.u2().tag_name(),
                        p.u2().triple(),
                        p.u1().triple(),
                        p.alpha(),
                        item.label,
                        item.detail
                    ));
                }
            }
            for (o, count, app) in [
                (a.lemma32, &mut s.lemma32, 0),
                (a.prop31, &mut s.prop31, 1),
                (a.prop33, &mut s.prop33, 2),
            ] {
                if o != Outcome::NotApplicable {
                    s.applicable[app] += 1;
                }
                if o == Outcome::Violated {
                    *count += 1;
                }
            }
        }
    }
    s
}

trait TagName {
    fn tag_name(&self) -> String;
}

impl TagName for TwoUninorm {
    fn tag_name(&self) -> String {
        format!("{:?}", self.tag())
    }
}

fn criterion3(s: &Sweep) -> Check {
    outcome(
        s.intra == 0 && s.boundary31 > 0 && s.boundary32 > 0,
        format!(
            "{} boundary instances (lambda split), {} (mu split), {} with differing case verdicts",
            s.boundary31, s.boundary32, s.intra
        ),
    )
}

fn criterion4(s: &Sweep) -> Check {
    let mut detail = format!("{} of {} instances violate an implication", s.lemma31, s.instances);
    if let Some(e) = &s.lemma31_example {
        detail.push_str(&format!("; first: {e}"));
    }
    outcome(s.lemma31 == 0, detail)
}

fn criterion5(s: &Sweep) -> Check {
    outcome(
        s.lemma32 + s.prop31 + s.prop33 == 0 && s.applicable.iter().all(|&a| a > 0),
        format!(
            "applicable/violations: pivot bound at a1 {}/{}, lambda-interval condition {}/{}, mu-interval condition {}/{}",
            s.applicable[0], s.lemma32, s.applicable[1], s.prop31, s.applicable[2], s.prop33
        ),
    )
}

fn tnorms() -> Vec<OperatorSpec> {
    vec![OperatorSpec::Min, OperatorSpec::Lukasiewicz, OperatorSpec::Drastic]
}

fn tconorms() -> Vec<OperatorSpec> {
    tnorms().into_iter().map(OperatorSpec::dual).collect()
}

/// Parametric operators with every grid-aligned parameter choice on `n`.
fn parametric(n: u32) -> Vec<OperatorSpec> {
    let p = |i: u32| r(i64::from(i), i64::from(n));
    let mut out = tnorms();
    out.extend(tconorms());
    for i in 0..=n {
        for t in tnorms() {
            for s in tconorms() {
                out.push(OperatorSpec::uninorm_min(p(i), t.clone(), s.clone()).unwrap());
                out.push(OperatorSpec::uninorm_max(p(i), t.clone(), s.clone()).unwrap());
                out.push(OperatorSpec::nullnorm(p(i), s.clone(), t.clone()).unwrap());
            }
        }
        for j in i..=n {
            for k in j..=n {
                out.push(OperatorSpec::example(p(i), p(j), p(k)).unwrap());
            }
        }
    }
    // Uni-nullnorm and null-uninorm shapes: a uninorm glued under a t-norm,
    // a t-conorm glued under a uninorm.
    for a in 1..n {
        for e in 0..=n {
            let q = r(i64::from(e), i64::from(n));
            for t in tnorms() {
                for s in tconorms() {
                    let u = OperatorSpec::uninorm_min(q, t.clone(), s.clone()).unwrap();
                    out.push(OperatorSpec::glued(p(a), u.clone(), t.clone()).unwrap());
                    out.push(OperatorSpec::glued(p(a), s.clone(), u).unwrap());
                }
            }
        }
    }
    out
}

fn criterion6(censuses: &[Vec<TwoUninorm>]) -> Check {
    let mut tables = 0u64;
    let mut failures = 0u64;
    let mut first = None;
    let mut check = |u: &TwoUninorm| {
        tables += 1;
        for item in scan_structural_props(u.table(), u.triple()).failures() {
            failures += 1;
            first.get_or_insert_with(|| format!("item {} on triple {}", item.item.number(), u.triple()));
        }
    };
    for entries in censuses {
        entries.iter().for_each(&mut check);
    }
    let mut fixtures = 0u64;
    for n in [2, 3, 4, 5, 6, 10, 12] {
        let g = make_grid(n).unwrap();
        for spec in parametric(n) {
            let Ok(table) = discretize(&spec, g) else { continue };
            for triple in find_2neutral(&table) {
                if is_2uninorm(&table, Some(&triple)) {
                    fixtures += 1;
                    check(&TwoUninorm::new(table.clone(), triple).unwrap());
                }
            }
        }
    }
    outcome(
        failures == 0 && fixtures > 0,
        format!(
            "{tables} (table, triple) instances incl. {fixtures} parametric fixtures, {failures} failing items{}",
            first.map(|f| format!(", first {f}")).unwrap_or_default()
        ),
    )
}

fn criterion7(census3: &[TwoUninorm]) -> Check {
    let g = make_grid(3).unwrap();
    let mut collapsed: Vec<TwoUninorm> = Vec::new();
    for spec in parametric(3) {
        let Some(u) = two(&spec, g) else { continue };
        let (e, _, f) = u.triple().indices();
        // (1,1,1), (0,0,0), e=a=f, (0,a,1), (e,a,1), (0,a,f)
        if (e == f || e == 0 || f == 3) && !collapsed.contains(&u) {
            collapsed.push(u);
        }
    }
    let mut per_item: BTreeMap<CorollaryItem, (u64, u64)> = BTreeMap::new();
    let mut check = |u1: &TwoUninorm, u2: &TwoUninorm| {
        if corollary_shape(u1.tag(), u2.tag()).is_none() {
            return;
        }
        for a in g.carrier() {
            let p = MigrativePair::new(u1, u2, a).unwrap();
            let c = corollary_dispatch(&p).unwrap();
            let Route::Corollary(item, _) = c.route else { unreachable!() };
            let slot = per_item.entry(item).or_default();
            slot.0 += 1;
            if c.migrative != characterize_thm31(&p).migrative {
                slot.1 += 1;
            }
        }
    };
    for x in &collapsed {
        for y in census3 {
            check(x, y);
            check(y, x);
        }
    }
    let all_present = CorollaryItem::ALL.iter().all(|i| per_item.contains_key(i));
    let bad: u64 = per_item.values().map(|v| v.1).sum();
    let counts: Vec<String> = per_item
        .iter()
        .map(|(i, (n, d))| format!("{}:{n}/{d}", i.roman()))
        .collect();
    outcome(
        all_present && bad == 0,
        format!(
            "{} collapsed operators against {} census entries; item:instances/disagreements {}",
            collapsed.len(),
            census3.len(),
            counts.join(" ")
        ),
    )
}

fn criterion8() -> Check {
    let mut compared = 0;
    let mut mismatched = Vec::new();
    let mut axiom_failures = 0;
    let mut check = |t: NeutralTriple| {
        let job = EnumJob::new(t).unwrap();
        let pruned = enumerate_2uninorms(&job);
        let naive = enumerate_naive(&job).unwrap();
        compared += 1;
        let a: BTreeSet<_> = pruned.tables.iter().cloned().collect();
        let b: BTreeSet<_> = naive.tables.into_iter().collect();
        if !pruned.is_complete() || a != b {
            mismatched.push(t.to_string());
        }
        for table in &pruned.tables {
            let ok = axioms::check_commutative(table).is_none()
                && axioms::check_associative(table).is_none()
                && axioms::check_monotone(table).is_none()
                && axioms::is_2neutral(table, &t);
            axiom_failures += u64::from(!ok);
        }
    };
    for n in 1..=2 {
        for t in NeutralTriple::all_on(make_grid(n).unwrap()) {
            check(t);
        }
    }
    let mut triples = NeutralTriple::all_on(make_grid(3).unwrap());
    triples.sort_by_key(|t| t.sort_key());
    let k = triples.len().div_ceil(10);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sample: Vec<NeutralTriple> = triples.choose_multiple(&mut rng, k).copied().collect();
    let sampled: Vec<String> = sample.iter().map(|t| t.to_string()).collect();
    for t in sample {
        check(t);
    }
    outcome(
        mismatched.is_empty() && axiom_failures == 0,
        format!(
            "{compared} triples compared (n<=2 all, n=3 sample {}), {} mismatches, {axiom_failures} axiom failures",
            sampled.join(" "),
            mismatched.len()
        ),
    )
}

fn criterion9() -> Check {
    let g = make_grid(20).unwrap();
    let m = two(&OperatorSpec::Min, g).unwrap();
    let bad: Vec<String> = g
        .carrier()
        .filter(|&a| !brute_force_migrative(&MigrativePair::new(&m, &m, a).unwrap()).migrative)
        .map(|a| a.to_string())
        .collect();
    outcome(bad.is_empty(), format!("21 alpha values checked, {} non-migrative", bad.len()))
}

fn main() -> ExitCode {
    // Tolerate the arguments libtest would receive.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if filter.as_deref().is_some_and(|f| !"acceptance".contains(f)) {
        return ExitCode::SUCCESS;
    }
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");

    let censuses: Vec<Vec<TwoUninorm>> = (1..=3).map(census_entries).collect();
    let sweep = census_sweep(&censuses);
    let results: Vec<(usize, &str, Check)> = vec![
        (1, "example sweep on n=20", criterion1()),
        (2, "brute force = lambda split = mu split on the census", criterion2()),
        (3, "boundary cases agree within each split", criterion3(&sweep)),
        (4, "unconditional pivot implications on the n<=3 census", criterion4(&sweep)),
        (5, "migrative pivot bound and interval conditions on the n<=3 census", criterion5(&sweep)),
        (6, "structural suite on every 2-uninorm seen", criterion6(&censuses)),
        (7, "corollary dispatch = lambda split for collapsed triples", criterion7(&censuses[2])),
        (8, "pruned enumeration = naive enumeration", criterion8()),
        (9, "Min is (alpha, Min)-migrative on n=20", criterion9()),
    ];

    let mut unexpected = Vec::new();
    for (i, name, o) in &results {
        println!("criterion {i}: {} - {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && (strict || !KNOWN_FAILURES.contains(i)) {
            unexpected.push(*i);
        }
        if o.pass && KNOWN_FAILURES.contains(i) {
            println!("criterion {i}: listed as a known failure but passed; update KNOWN_FAILURES");
            unexpected.push(*i);
        }
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {} of {} criteria pass; failing {:?}; known failures {:?}",
        results.len() - failed.len(),
        results.len(),
        failed,
        KNOWN_FAILURES
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
