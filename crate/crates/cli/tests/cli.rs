use std::path::Path;
use std::process::Command as Process;

use proptest::prelude::*;
use serde_json::Value;
use twouni_cli::config::Located;
use twouni_cli::{emit_report, fill_audit_report, parse_config, run_command, Command, Format, Report, RunConfig};
use twouni_core::chain_enum::{census_audit, CensusLimits};
use twouni_core::make_grid;
use twouni_core::migrativity::{Case, Disagreement, DisagreementKind, PairId};
use twouni_core::operators::{OperatorSpec, Param};

const PAIR: &str = "\
[run]
grid = 20
u1 = U1, u2 = U2

[operator U1]
family = example-2uninorm, e = 0.2, a = 0.6, f = 0.8

[operator U2]
family = example-2uninorm, e = 0.3, a = 0.5, f = 0.7
";

fn configs_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs"))
}

fn with_command(text: &str, command: Command) -> RunConfig {
    let mut cfg = parse_config(text).unwrap();
    cfg.command = Some(command);
    cfg
}

fn emit(r: &Report, f: Format) -> String {
    let mut buf = Vec::new();
    emit_report(r, f, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

fn json_lines(r: &Report) -> Vec<Value> {
    emit(r, Format::JsonLines)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn strip_timing(text: &str) -> String {
    text.lines()
        .map(|l| l.split(",\"elapsed_ms\"").next().unwrap())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn sample_configs_parse() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "conf") {
            let text = std::fs::read_to_string(&path).unwrap();
            parse_config(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 5);
}

#[test]
fn example_pair_sweep() {
    let r = run_command(&with_command(PAIR, Command::Sweep)).unwrap();
    assert!(!r.failed);
    assert_eq!(
        r.summary["migrative_alpha"],
        serde_json::json!(["0.7", "0.85", "0.9", "0.95", "1"])
    );
    assert_eq!(r.summary["intervals"], "{0.7} U (0.8, 1]");
    let csv = emit(&r, Format::Csv);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("alpha,verdict,route,case"));
    assert_eq!(lines.count(), 21);
    assert!(csv.contains("\n0.7,migrative,"));
    assert!(csv.contains("\n0.75,not migrative,"));
}

#[test]
fn sweep_header_documents_interval_reading() {
    let r = run_command(&with_command(PAIR, Command::Sweep)).unwrap();
    let header = &json_lines(&r)[0];
    assert_eq!(header["record"], "header");
    assert!(header["notes"][0].as_str().unwrap().contains("(p, q]"));
}

#[test]
fn verify_example_operator() {
    let text = std::fs::read_to_string(configs_dir().join("verify-example.conf")).unwrap();
    let r = run_command(&parse_config(&text).unwrap()).unwrap();
    assert!(!r.failed);
    assert_eq!(r.summary["triple"], "(0.3, 0.5, 0.7)");
    let checks: Vec<Value> = r.records.iter().filter(|v| v["record"] == "check").cloned().collect();
    assert_eq!(checks.len(), 11);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn migrative_runs_every_procedure() {
    let mut cfg = with_command(PAIR, Command::Migrative);
    cfg.alpha = Some(Located {
        value: Param::new(3, 4),
        line: 0,
    });
    let r = run_command(&cfg).unwrap();
    assert!(!r.failed);
    assert_eq!(r.summary["migrative"], false);
    let verdicts: Vec<&Value> = r.records.iter().filter(|v| v["record"] == "verdict").collect();
    let procedures: Vec<&str> = verdicts.iter().map(|v| v["procedure"].as_str().unwrap()).collect();
    assert_eq!(procedures, ["brute-force", "lambda-split", "mu-split"]);
    let w = &verdicts[0]["witness"];
    // first violating cell in row-major order
    assert_eq!((w["x"].as_str(), w["y"].as_str()), (Some("0"), Some("0.65")));
    assert_ne!(w["lhs"], w["rhs"]);
    assert!(verdicts[1]["condition_failure"].is_object());
}

#[test]
fn audit_on_n2_has_no_disagreements() {
    let mut cfg = RunConfig::default();
    cfg.grid = Some(Located { value: 2, line: 0 });
    cfg.command = Some(Command::Audit);
    let r = run_command(&cfg).unwrap();
    assert_eq!(r.summary["disagreements"], 0);
    assert_eq!(r.summary["structural_failures"], 0);
    assert_eq!(r.summary["complete"], true);
    // The only failed checks are the unconditional lemma's implications,
    // which do not hold on this census; the exit status reports them.
    let kinds: Vec<&Value> = r
        .records
        .iter()
        .filter(|v| v["record"] == "violation")
        .map(|v| &v["kind"])
        .collect();
    assert!(!kinds.is_empty());
    assert!(kinds.iter().all(|k| *k == "Lemma31"));
    assert!(r.failed);
}

#[test]
fn heatmap_is_a_square_value_grid() {
    let text = std::fs::read_to_string(configs_dir().join("heatmap.conf")).unwrap();
    let r = run_command(&parse_config(&text).unwrap()).unwrap();
    let csv = emit(&r, Format::Csv);
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|row| row.len() == 11));
    // e = 0.2 is neutral on [0, a] and f = 0.8 on [a, 1].
    assert_eq!(rows[2][..7], ["0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6"]);
    assert_eq!(rows[8][6..], ["0.6", "0.7", "0.8", "0.9", "1"]);
}

#[test]
fn float_heatmap_accepts_off_grid_parameters() {
    let text = "[run]\ngrid = 10\nmode = float\ncommand = heatmap\noperator = U\n\
                [operator U]\nfamily = uninorm-min, e = 0.25, t = min, s = max\n";
    let r = run_command(&parse_config(text).unwrap()).unwrap();
    assert_eq!(r.table.rows.len(), 11);
    // min below e = 0.25, max once both arguments are above it
    assert_eq!(r.table.rows[1][2], "0.1");
    assert_eq!(r.table.rows[3][4], "0.4");
}

#[test]
fn injected_disagreement_round_trips() {
    let mut audit = census_audit(make_grid(1).unwrap(), &CensusLimits::default()).unwrap();
    let g = make_grid(1).unwrap();
    audit.audit.disagreement_count += 1;
    audit.audit.disagreements.push(Disagreement {
        pair: PairId { u1: 0, u2: 1, alpha: 1 },
        alpha: g.one(),
        triple1: "(0, 0, 1)".into(),
        triple2: "(1, 1, 1)".into(),
        kind: DisagreementKind::Thm31(Case::II),
        brute: true,
        characterization: false,
        witness: None,
        condition_failure: None,
    });
    let mut r = Report::new(Command::Audit, Default::default());
    fill_audit_report(&audit, &mut r);
    assert!(r.failed);
    let lines = json_lines(&r);
    let d: Vec<&Value> = lines.iter().filter(|v| v["record"] == "disagreement").collect();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0]["pair"], serde_json::json!({"u1": 0, "u2": 1, "alpha": 1}));
    assert_eq!(d[0]["alpha"], "1");
    assert_eq!((d[0]["brute"].as_bool(), d[0]["characterization"].as_bool()), (Some(true), Some(false)));
    assert_eq!(d[0]["triple1"], "(0, 0, 1)");
    assert_eq!(lines.last().unwrap()["disagreements"], 1);
}

#[test]
fn reports_are_byte_stable_apart_from_timing() {
    for command in [Command::Sweep, Command::Verify] {
        let mut cfg = with_command(PAIR, command);
        cfg.operator = cfg.u1.clone();
        let a = emit(&run_command(&cfg).unwrap(), Format::JsonLines);
        let b = emit(&run_command(&cfg).unwrap(), Format::JsonLines);
        assert_eq!(strip_timing(&a), strip_timing(&b));
    }
}

#[test]
fn enumerate_single_triple() {
    let mut cfg = parse_config("[run]\ngrid = 2\ncommand = enumerate\ntriple = 0 1/2 1\n").unwrap();
    cfg.command = Some(Command::Enumerate);
    let r = run_command(&cfg).unwrap();
    assert!(!r.failed);
    let tables = r.records.iter().filter(|v| v["record"] == "table").count() as u64;
    assert_eq!(r.summary["tables"], tables);
    assert!(tables > 0);
}

#[test]
fn usage_errors() {
    let mut cfg = with_command(PAIR, Command::Sweep);
    cfg.mode = twouni_core::Mode::Float;
    assert!(run_command(&cfg).is_err());
    let cfg = with_command(PAIR, Command::Migrative);
    assert!(run_command(&cfg).is_err(), "alpha missing");
    let mut cfg = RunConfig::default();
    cfg.grid = Some(Located { value: 9, line: 0 });
    cfg.command = Some(Command::Audit);
    assert!(run_command(&cfg).is_err(), "grid above the enumeration cap");
}

fn twouni(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_twouni")).args(args).output().unwrap()
}

#[test]
fn exit_status_contract() {
    let conf = |name: &str| configs_dir().join(name).to_string_lossy().into_owned();
    assert_eq!(twouni(&["--config", &conf("verify-example.conf")]).status.code(), Some(0));
    assert_eq!(twouni(&["--config", &conf("example-sweep.conf")]).status.code(), Some(0));
    assert_eq!(twouni(&["--config", &conf("bad-table.conf")]).status.code(), Some(1));
    assert_eq!(twouni(&["--command", "audit", "--grid", "1"]).status.code(), Some(0));
    assert_eq!(
        twouni(&["--config", &conf("example-sweep.conf"), "--mode", "float"]).status.code(),
        Some(2)
    );
    assert_eq!(twouni(&["--command", "sweep"]).status.code(), Some(2));
    assert_eq!(twouni(&["--config", "/nonexistent.conf"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let off = dir.path().join("off.conf");
    std::fs::write(&off, "[run]\ngrid = 10\ncommand = verify\noperator = U\n[operator U]\nfamily = example-2uninorm, e = 0.25, a = 0.5, f = 1\n").unwrap();
    let out = twouni(&["--config", off.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let conf = configs_dir().join("example-sweep.conf");
    let out = twouni(&[
        "--config",
        conf.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("alpha,verdict,route,case\n0,not migrative,"));
}

fn scalar_text(i: u32, n: u32, fraction: bool) -> String {
    if fraction {
        format!("{i}/{n}")
    } else {
        format!("{}", f64::from(i) / f64::from(n))
    }
}

proptest! {
    #[test]
    fn parse_config_never_panics(text in "[\\[\\]a-z0-9=,./# \\n-]{0,200}") {
        let _ = parse_config(&text);
    }

    #[test]
    fn example_stanza_resolves_exactly(
        n in 1u32..=40,
        raw in (0u32..=40, 0u32..=40, 0u32..=40),
        fraction in any::<bool>(),
    ) {
        let mut v = [raw.0 % (n + 1), raw.1 % (n + 1), raw.2 % (n + 1)];
        v.sort();
        let text = format!(
            "[run]\ngrid = {n}\n[operator U]\nfamily = example-2uninorm, e = {}, a = {}, f = {}\n",
            scalar_text(v[0], n, fraction),
            scalar_text(v[1], n, fraction),
            scalar_text(v[2], n, fraction),
        );
        match parse_config(&text) {
            Ok(cfg) => {
                let p = |i: u32| Param::new(i64::from(i), i64::from(n));
                let expected = OperatorSpec::example(p(v[0]), p(v[1]), p(v[2])).unwrap();
                prop_assert_eq!(cfg.resolve("U").unwrap().spec, expected);
            }
            // Decimal text of a non-terminating fraction is not exactly on
            // the grid, and must be refused rather than snapped.
            Err(e) => {
                prop_assert!(!fraction, "{}", e);
            }
        }
    }
}
