//! Reports and their three output formats.

use std::io::{self, Write};
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::config::{Command, Format};

pub const FORMAT_VERSION: u32 = 1;

/// Flat rows for csv and human output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    /// `None` for a bare value grid such as a heatmap.
    pub columns: Option<Vec<String>>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn with_columns(columns: &[&str]) -> Self {
        Table {
            columns: Some(columns.iter().map(|c| c.to_string()).collect()),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    /// The settings the report was produced from.
    pub config: Map<String, Value>,
    pub notes: Vec<String>,
    /// One object per check, in a deterministic order.
    pub records: Vec<Value>,
    pub table: Table,
    pub summary: Map<String, Value>,
    pub failed: bool,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: Command, config: Map<String, Value>) -> Self {
        Report {
            command,
            config,
            notes: Vec::new(),
            records: Vec::new(),
            table: Table::default(),
            summary: Map::new(),
            failed: false,
            elapsed: Duration::ZERO,
        }
    }

    /// Appends a record; `kind` becomes its leading `record` key.
    pub fn record(&mut self, kind: &str, body: Value) {
        let mut m = Map::new();
        m.insert("record".into(), kind.into());
        match body {
            Value::Object(fields) => m.extend(fields),
            other => {
                m.insert("value".into(), other);
            }
        }
        self.records.push(Value::Object(m));
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }

    fn header(&self) -> Value {
        json!({
            "record": "header",
            "format_version": FORMAT_VERSION,
            "command": self.command.name(),
            "config": self.config,
            "notes": self.notes,
        })
    }

    fn summary_record(&self) -> Value {
        let mut m = Map::new();
        m.insert("record".into(), "summary".into());
        m.extend(self.summary.clone());
        m.insert("failed".into(), self.failed.into());
        m.insert("elapsed_ms".into(), json!(self.elapsed.as_secs_f64() * 1e3));
        Value::Object(m)
    }
}

pub fn emit_report(r: &Report, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::JsonLines => emit_json_lines(r, out),
        Format::Csv => emit_csv(r, out),
        Format::Human => emit_human(r, out),
    }
}

fn emit_json_lines(r: &Report, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{}", r.header())?;
    for rec in &r.records {
        writeln!(out, "{rec}")?;
    }
    writeln!(out, "{}", r.summary_record())
}

fn emit_csv(r: &Report, out: &mut dyn Write) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    if let Some(cols) = &r.table.columns {
        w.write_record(cols)?;
    }
    for row in &r.table.rows {
        w.write_record(row)?;
    }
    w.flush()
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit_human(r: &Report, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{} (format {})", r.command, FORMAT_VERSION)?;
    for (k, v) in &r.config {
        writeln!(out, "  {k}: {}", scalar_text(v))?;
    }
    for note in &r.notes {
        writeln!(out, "note: {note}")?;
    }
    writeln!(out)?;

    let mut all: Vec<&[String]> = Vec::new();
    if let Some(cols) = &r.table.columns {
        all.push(cols);
    }
    all.extend(r.table.rows.iter().map(Vec::as_slice));
    let width = all.iter().map(|row| row.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| all.iter().filter_map(|row| row.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for (i, row) in all.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
        if i == 0 && r.table.columns.is_some() {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            writeln!(out, "{}", rule.join("  "))?;
        }
    }

    writeln!(out)?;
    for (k, v) in &r.summary {
        writeln!(out, "{k}: {}", scalar_text(v))?;
    }
    writeln!(out, "result: {}", if r.failed { "FAILED" } else { "ok" })?;
    writeln!(out, "elapsed: {:.3}s", r.elapsed.as_secs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(Command::Sweep, Map::new());
        r.notes.push("n".into());
        r.record("verdict", json!({"zeta": 1, "alpha": "0.5"}));
        r.table = Table::with_columns(&["alpha", "verdict"]);
        r.table.push(vec!["0.5".into(), "migrative".into()]);
        r.summary.insert("count".into(), 1.into());
        r
    }

    fn emit(r: &Report, f: Format) -> String {
        let mut buf = Vec::new();
        emit_report(r, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_lines_keep_insertion_order() {
        let text = emit(&sample(), Format::JsonLines);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with(r#"{"record":"header","format_version":1"#));
        assert_eq!(lines[1], r#"{"record":"verdict","zeta":1,"alpha":"0.5"}"#);
        assert!(lines[2].starts_with(r#"{"record":"summary","count":1,"failed":false,"elapsed_ms":"#));
    }

    #[test]
    fn csv_and_human() {
        assert_eq!(emit(&sample(), Format::Csv), "alpha,verdict\n0.5,migrative\n");
        let human = emit(&sample(), Format::Human);
        assert!(human.contains("alpha  verdict\n-----  ---------\n0.5    migrative\n"), "{human}");
    }
}
