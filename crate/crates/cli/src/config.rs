//! Run configuration: a sectioned `key = value` text format.
//!
//! ```text
//! [run]
//! grid = 20
//! command = sweep
//! u1 = U1, u2 = U2
//!
//! [operator U1]
//! family = example-2uninorm, e = 0.2, a = 0.6, f = 0.8
//! ```
//!
//! Several pairs may share a line, separated by commas. `#` starts a comment.
//! Values are decimal or fraction literals (`7/10`); in exact mode every
//! value must be a point of the grid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;
use twouni_core::grid::parse_scalar;
use twouni_core::operators::{OperatorSpec, Param};
use twouni_core::{make_grid, Mode, NeutralTriple, OperatorTable, UnitGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}", located(*.line, .message))]
    Validation { line: Option<usize>, message: String },
}

fn located(line: Option<usize>, message: &str) -> String {
    match line {
        Some(l) => format!("line {l}: {message}"),
        None => message.to_string(),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse {
        line,
        message: message.into(),
    }
}

fn invalid(line: Option<usize>, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Verify,
    Migrative,
    Sweep,
    Enumerate,
    Audit,
    Heatmap,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Verify,
        Command::Migrative,
        Command::Sweep,
        Command::Enumerate,
        Command::Audit,
        Command::Heatmap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Migrative => "migrative",
            Command::Sweep => "sweep",
            Command::Enumerate => "enumerate",
            Command::Audit => "audit",
            Command::Heatmap => "heatmap",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    JsonLines,
    Csv,
    Human,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json-lines" => Ok(Format::JsonLines),
            "csv" => Ok(Format::Csv),
            "human" => Ok(Format::Human),
            _ => Err(format!("unknown format '{s}' (expected json-lines, csv or human)")),
        }
    }
}

/// Operator families and their keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Min,
    Max,
    Product,
    Lukasiewicz,
    Drastic,
    Dual,
    UninormMin,
    UninormMax,
    Nullnorm,
    Example,
    Glued,
    Table,
}

impl Family {
    const ALL: [Family; 12] = [
        Family::Min,
        Family::Max,
        Family::Product,
        Family::Lukasiewicz,
        Family::Drastic,
        Family::Dual,
        Family::UninormMin,
        Family::UninormMax,
        Family::Nullnorm,
        Family::Example,
        Family::Glued,
        Family::Table,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Family::Min => "min",
            Family::Max => "max",
            Family::Product => "product",
            Family::Lukasiewicz => "lukasiewicz",
            Family::Drastic => "drastic",
            Family::Dual => "dual",
            Family::UninormMin => "uninorm-min",
            Family::UninormMax => "uninorm-max",
            Family::Nullnorm => "nullnorm",
            Family::Example => "example-2uninorm",
            Family::Glued => "glued",
            Family::Table => "table",
        }
    }

    fn from_keyword(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.keyword() == s)
    }

    /// Families usable as a bare reference (no parameters).
    fn basic_spec(s: &str) -> Option<OperatorSpec> {
        Some(match Family::from_keyword(s)? {
            Family::Min => OperatorSpec::Min,
            Family::Max => OperatorSpec::Max,
            Family::Product => OperatorSpec::Product,
            Family::Lukasiewicz => OperatorSpec::Lukasiewicz,
            Family::Drastic => OperatorSpec::Drastic,
            _ => return None,
        })
    }

    fn param_keys(self) -> &'static [&'static str] {
        match self {
            Family::UninormMin | Family::UninormMax => &["e"],
            Family::Nullnorm | Family::Glued => &["a"],
            Family::Example => &["e", "a", "f"],
            _ => &[],
        }
    }

    fn ref_keys(self) -> &'static [&'static str] {
        match self {
            Family::Dual => &["inner"],
            Family::UninormMin | Family::UninormMax => &["t", "s"],
            Family::Nullnorm => &["s", "t"],
            Family::Glued => &["low", "high"],
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Located<T> {
    pub value: T,
    pub line: usize,
}

/// One `[operator NAME]` section, checked for shape but not yet built.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorDef {
    pub name: String,
    pub line: usize,
    pub family: Family,
    pub params: BTreeMap<String, Located<Param>>,
    pub refs: BTreeMap<String, Located<String>>,
    pub rows: Vec<Located<String>>,
    pub triple: Option<Located<(Param, Param, Param)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: Option<Located<u32>>,
    pub mode: Mode,
    pub eps: Option<f64>,
    pub command: Option<Command>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub budget: Option<Duration>,
    pub jobs: Option<usize>,
    pub operator: Option<Located<String>>,
    pub u1: Option<Located<String>>,
    pub u2: Option<Located<String>>,
    pub alpha: Option<Located<Param>>,
    pub triple: Option<Located<(Param, Param, Param)>>,
    pub operators: BTreeMap<String, OperatorDef>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: None,
            mode: Mode::Exact,
            eps: None,
            command: None,
            format: None,
            out: None,
            budget: None,
            jobs: None,
            operator: None,
            u1: None,
            u2: None,
            alpha: None,
            triple: None,
            operators: BTreeMap::new(),
        }
    }
}

/// An operator ready for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedOperator {
    pub name: String,
    pub spec: OperatorSpec,
    /// Triple given explicitly in the config, if any.
    pub triple: Option<NeutralTriple>,
}

const RUN_KEYS: &[&str] = &[
    "grid", "mode", "eps", "command", "format", "out", "budget", "jobs", "operator", "u1", "u2", "alpha", "triple",
];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn scalar(value: &str, line: usize) -> Result<Param, ConfigError> {
    parse_scalar(value).map_err(|e| parse_err(line, e.to_string()))
}

fn triple_literal(value: &str, line: usize) -> Result<(Param, Param, Param), ConfigError> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    let [e, a, f] = parts.as_slice() else {
        return Err(parse_err(line, format!("triple needs three values 'e a f', got '{value}'")));
    };
    Ok((scalar(e, line)?, scalar(a, line)?, scalar(f, line)?))
}

enum Section {
    None,
    Run,
    Operator,
}

struct RawOperator {
    line: usize,
    pairs: Vec<(String, String, usize)>,
}

/// Parses and checks a config. Grid alignment is checked as well when the
/// config names a grid; otherwise call [`RunConfig::validate`] once it is known.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut section = Section::None;
    let mut run_seen = BTreeSet::new();
    let mut raw: Vec<(String, RawOperator)> = Vec::new();

    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, "section header is missing ']'"))?
                .trim();
            let mut words = header.split_whitespace();
            section = match (words.next(), words.next(), words.next()) {
                (Some("run"), None, _) => Section::Run,
                (Some("operator"), Some(name), None) => {
                    if !is_identifier(name) {
                        return Err(parse_err(line, format!("invalid operator name '{name}'")));
                    }
                    if Family::from_keyword(name).is_some() {
                        return Err(invalid(Some(line), format!("operator name '{name}' is a family keyword")));
                    }
                    if raw.iter().any(|(n, _)| n == name) {
                        return Err(invalid(Some(line), format!("duplicate operator name '{name}'")));
                    }
                    raw.push((name.to_string(), RawOperator { line, pairs: Vec::new() }));
                    Section::Operator
                }
                _ => return Err(parse_err(line, format!("unknown section '[{header}]'"))),
            };
            continue;
        }

        for segment in content.split(',') {
            let (key, value) = segment
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected 'key = value', got '{}'", segment.trim())))?;
            let (key, value) = (key.trim(), value.trim());
            if !is_identifier(key) {
                return Err(parse_err(line, format!("invalid key '{key}'")));
            }
            if value.is_empty() {
                return Err(parse_err(line, format!("missing value for '{key}'")));
            }
            match &section {
                Section::None => return Err(parse_err(line, "key outside of any section")),
                Section::Run => {
                    if !run_seen.insert(key.to_string()) {
                        return Err(parse_err(line, format!("duplicate key '{key}'")));
                    }
                    set_run_key(&mut cfg, key, value, line)?;
                }
                Section::Operator => {
                    let op = &mut raw.last_mut().expect("section opened").1;
                    if key != "row" && op.pairs.iter().any(|(k, _, _)| k == key) {
                        return Err(parse_err(line, format!("duplicate key '{key}'")));
                    }
                    op.pairs.push((key.to_string(), value.to_string(), line));
                }
            }
        }
    }

    for (name, op) in raw {
        let def = build_def(name, op)?;
        cfg.operators.insert(def.name.clone(), def);
    }
    cfg.check_references()?;
    if cfg.grid.is_some() {
        cfg.validate()?;
    }
    Ok(cfg)
}

fn set_run_key(cfg: &mut RunConfig, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
    let at = |v: String| Some(Located { value: v, line });
    match key {
        "grid" => {
            let n = value
                .parse::<u32>()
                .map_err(|_| parse_err(line, format!("grid must be a positive integer, got '{value}'")))?;
            cfg.grid = Some(Located { value: n, line });
        }
        "mode" => cfg.mode = value.parse().map_err(|e: String| parse_err(line, e))?,
        "eps" => {
            let eps = value
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("bad eps '{value}'")))?;
            cfg.eps = Some(eps);
        }
        "command" => cfg.command = Some(value.parse().map_err(|e: String| parse_err(line, e))?),
        "format" => cfg.format = Some(value.parse().map_err(|e: String| parse_err(line, e))?),
        "out" => cfg.out = Some(PathBuf::from(value)),
        "budget" => {
            let secs = value
                .parse::<f64>()
                .ok()
                .and_then(|s| Duration::try_from_secs_f64(s).ok())
                .ok_or_else(|| parse_err(line, format!("budget must be a number of seconds, got '{value}'")))?;
            cfg.budget = Some(secs);
        }
        "jobs" => {
            let k = value
                .parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| parse_err(line, format!("jobs must be a positive integer, got '{value}'")))?;
            cfg.jobs = Some(k);
        }
        "operator" => cfg.operator = at(value.to_string()),
        "u1" => cfg.u1 = at(value.to_string()),
        "u2" => cfg.u2 = at(value.to_string()),
        "alpha" => cfg.alpha = Some(Located { value: scalar(value, line)?, line }),
        "triple" => cfg.triple = Some(Located { value: triple_literal(value, line)?, line }),
        _ => {
            return Err(parse_err(
                line,
                format!("unknown key '{key}' in [run] (expected one of {})", RUN_KEYS.join(", ")),
            ))
        }
    }
    Ok(())
}

fn build_def(name: String, op: RawOperator) -> Result<OperatorDef, ConfigError> {
    let (family_value, family_line) = op
        .pairs
        .iter()
        .find(|(k, _, _)| k == "family")
        .map(|(_, v, l)| (v.clone(), *l))
        .ok_or_else(|| invalid(Some(op.line), format!("operator '{name}' has no family")))?;
    let family = Family::from_keyword(&family_value)
        .ok_or_else(|| parse_err(family_line, format!("unknown family '{family_value}'")))?;
    let mut def = OperatorDef {
        name,
        line: op.line,
        family,
        params: BTreeMap::new(),
        refs: BTreeMap::new(),
        rows: Vec::new(),
        triple: None,
    };
    for (key, value, line) in op.pairs {
        match key.as_str() {
            "family" => {}
            "triple" => def.triple = Some(Located { value: triple_literal(&value, line)?, line }),
            "row" if family == Family::Table => def.rows.push(Located { value, line }),
            k if family.param_keys().contains(&k) => {
                def.params.insert(key, Located { value: scalar(&value, line)?, line });
            }
            k if family.ref_keys().contains(&k) => {
                def.refs.insert(key, Located { value, line });
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("key '{key}' does not apply to family '{}'", family.keyword()),
                ))
            }
        }
    }
    let missing: Vec<&str> = family
        .param_keys()
        .iter()
        .filter(|k| !def.params.contains_key(**k))
        .chain(family.ref_keys().iter().filter(|k| !def.refs.contains_key(**k)))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(invalid(
            Some(def.line),
            format!("operator '{}' is missing {}", def.name, missing.join(", ")),
        ));
    }
    if family == Family::Table && def.rows.is_empty() {
        return Err(invalid(Some(def.line), format!("table operator '{}' has no rows", def.name)));
    }
    Ok(def)
}

/// Parses whitespace-separated value rows into a table on `grid`. Errors
/// carry the index of the offending row.
pub fn parse_table_rows(rows: &[&str], grid: UnitGrid) -> Result<OperatorTable, (usize, String)> {
    let size = grid.len();
    if rows.len() != size {
        return Err((rows.len().min(size), format!("expected {size} rows, found {}", rows.len())));
    }
    let mut parsed = Vec::with_capacity(size);
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        if cells.len() != size {
            return Err((r, format!("expected {size} values, found {}", cells.len())));
        }
        let values = cells
            .iter()
            .map(|c| {
                let v = parse_scalar(c).map_err(|e| e.to_string())?;
                grid.index_of(v).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<u32>, String>>()
            .map_err(|m| (r, m))?;
        parsed.push(values);
    }
    OperatorTable::from_rows(grid, &parsed).map_err(|e| (0, e.to_string()))
}

impl RunConfig {
    pub fn grid(&self) -> Result<UnitGrid, ConfigError> {
        let g = self
            .grid
            .as_ref()
            .ok_or_else(|| invalid(None, "no grid given (set 'grid' in [run] or pass --grid)"))?;
        make_grid(g.value).map_err(|e| invalid(Some(g.line), e.to_string()))
    }

    fn check_references(&self) -> Result<(), ConfigError> {
        let exists = |name: &str| Family::basic_spec(name).is_some() || self.operators.contains_key(name);
        for def in self.operators.values() {
            for r in def.refs.values() {
                if !exists(&r.value) {
                    return Err(invalid(Some(r.line), format!("unknown operator reference '{}'", r.value)));
                }
            }
        }
        for r in [&self.operator, &self.u1, &self.u2].into_iter().flatten() {
            if !exists(&r.value) {
                return Err(invalid(Some(r.line), format!("unknown operator reference '{}'", r.value)));
            }
        }
        // Depth-first search for reference cycles.
        fn visit<'a>(
            cfg: &'a RunConfig,
            name: &'a str,
            stack: &mut Vec<&'a str>,
            done: &mut BTreeSet<&'a str>,
        ) -> Result<(), ConfigError> {
            let Some(def) = cfg.operators.get(name) else {
                return Ok(());
            };
            if done.contains(name) {
                return Ok(());
            }
            if stack.contains(&name) {
                return Err(invalid(
                    Some(def.line),
                    format!("operator references form a cycle: {} -> {name}", stack.join(" -> ")),
                ));
            }
            stack.push(name);
            for r in def.refs.values() {
                visit(cfg, &r.value, stack, done)?;
            }
            stack.pop();
            done.insert(name);
            Ok(())
        }
        let mut done = BTreeSet::new();
        for name in self.operators.keys() {
            visit(self, name, &mut Vec::new(), &mut done)?;
        }
        Ok(())
    }

    /// Checks grid-dependent constraints: the grid itself and, in exact
    /// mode, that every literal is a grid point.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let grid = self.grid()?;
        if let Some(eps) = self.eps {
            if eps.is_nan() || eps < 0.0 {
                return Err(invalid(None, format!("eps must be non-negative, got {eps}")));
            }
        }
        let exact = self.mode == Mode::Exact;
        let on_grid = |name: &str, v: Param, line: usize| -> Result<(), ConfigError> {
            if !(Param::from_integer(0)..=Param::from_integer(1)).contains(&v) {
                return Err(invalid(Some(line), format!("{name} = {v} is outside [0, 1]")));
            }
            if exact && !grid.contains(v) {
                return Err(invalid(
                    Some(line),
                    format!("{name} = {v} is not on the grid with n = {} (NotOnGrid)", grid.n()),
                ));
            }
            Ok(())
        };
        for def in self.operators.values() {
            for (k, p) in &def.params {
                on_grid(k, p.value, p.line)?;
            }
            if let Some(t) = &def.triple {
                let (e, a, f) = t.value;
                for (k, v) in [("e", e), ("a", a), ("f", f)] {
                    on_grid(k, v, t.line)?;
                }
            }
            if def.family == Family::Table {
                self.table_of(def, grid)?;
            }
        }
        if let Some(a) = &self.alpha {
            on_grid("alpha", a.value, a.line)?;
        }
        if let Some(t) = &self.triple {
            let (e, a, f) = t.value;
            for (k, v) in [("e", e), ("a", a), ("f", f)] {
                on_grid(k, v, t.line)?;
            }
        }
        Ok(())
    }

    fn table_of(&self, def: &OperatorDef, grid: UnitGrid) -> Result<OperatorTable, ConfigError> {
        let rows: Vec<&str> = def.rows.iter().map(|r| r.value.as_str()).collect();
        parse_table_rows(&rows, grid).map_err(|(r, m)| {
            let line = def.rows.get(r).map_or(def.line, |l| l.line);
            invalid(Some(line), format!("operator '{}': {m}", def.name))
        })
    }

    fn spec_of(&self, name: &str, grid: UnitGrid) -> Result<OperatorSpec, ConfigError> {
        if let Some(spec) = Family::basic_spec(name) {
            return Ok(spec);
        }
        let def = self
            .operators
            .get(name)
            .ok_or_else(|| invalid(None, format!("unknown operator '{name}'")))?;
        let p = |k: &str| def.params[k].value;
        let r = |k: &str| self.spec_of(&def.refs[k].value, grid);
        let wrap = |res: twouni_core::operators::Result<OperatorSpec>| {
            res.map_err(|e| invalid(Some(def.line), format!("operator '{name}': {e}")))
        };
        Ok(match def.family {
            Family::Min => OperatorSpec::Min,
            Family::Max => OperatorSpec::Max,
            Family::Product => OperatorSpec::Product,
            Family::Lukasiewicz => OperatorSpec::Lukasiewicz,
            Family::Drastic => OperatorSpec::Drastic,
            Family::Dual => OperatorSpec::dual(r("inner")?),
            Family::UninormMin => wrap(OperatorSpec::uninorm_min(p("e"), r("t")?, r("s")?))?,
            Family::UninormMax => wrap(OperatorSpec::uninorm_max(p("e"), r("t")?, r("s")?))?,
            Family::Nullnorm => wrap(OperatorSpec::nullnorm(p("a"), r("s")?, r("t")?))?,
            Family::Example => wrap(OperatorSpec::example(p("e"), p("a"), p("f")))?,
            Family::Glued => wrap(OperatorSpec::glued(p("a"), r("low")?, r("high")?))?,
            Family::Table => OperatorSpec::Table(self.table_of(def, grid)?),
        })
    }

    /// Builds the named operator (or bare family keyword) on `grid`.
    pub fn resolve(&self, name: &str) -> Result<ResolvedOperator, ConfigError> {
        let grid = self.grid()?;
        let spec = self.spec_of(name, grid)?;
        let triple = match self.operators.get(name).and_then(|d| d.triple.as_ref()) {
            Some(t) => Some(triple_on(t, grid)?),
            None => None,
        };
        Ok(ResolvedOperator {
            name: name.to_string(),
            spec,
            triple,
        })
    }

    /// The `[run]` triple on the grid, if one was given.
    pub fn run_triple(&self) -> Result<Option<NeutralTriple>, ConfigError> {
        match &self.triple {
            Some(t) => Ok(Some(triple_on(t, self.grid()?)?)),
            None => Ok(None),
        }
    }
}

fn triple_on(t: &Located<(Param, Param, Param)>, grid: UnitGrid) -> Result<NeutralTriple, ConfigError> {
    let (e, a, f) = t.value;
    let pt = |v: Param| {
        grid.index_of(v)
            .and_then(|i| grid.point(i))
            .map_err(|err| invalid(Some(t.line), err.to_string()))
    };
    NeutralTriple::new(pt(e)?, pt(a)?, pt(f)?).map_err(|err| invalid(Some(t.line), err.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Param {
        Param::new(p, q)
    }

    #[test]
    fn example_stanza() {
        let cfg = parse_config(
            "[run]\ngrid = 20\n[operator U1]\nfamily=example-2uninorm, e=0.2, a=0.6, f=0.8\n",
        )
        .unwrap();
        let u = cfg.resolve("U1").unwrap();
        assert_eq!(u.spec, OperatorSpec::example(r(1, 5), r(3, 5), r(4, 5)).unwrap());
        assert_eq!(u.triple, None);
    }

    #[test]
    fn min_stanza_and_bare_keyword() {
        let cfg = parse_config("[run]\ngrid=4\n[operator M]\nfamily = min\n").unwrap();
        assert_eq!(cfg.resolve("M").unwrap().spec, OperatorSpec::Min);
        assert_eq!(cfg.resolve("max").unwrap().spec, OperatorSpec::Max);
    }

    #[test]
    fn off_grid_parameter_is_rejected() {
        let err = parse_config("[run]\ngrid = 10\n\n[operator U]\nfamily = example-2uninorm, e = 0.25, a = 0.5, f = 1\n")
            .unwrap_err();
        match err {
            ConfigError::Validation { line, message } => {
                assert_eq!(line, Some(5));
                assert!(message.contains("NotOnGrid"), "{message}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn float_mode_accepts_off_grid_parameters() {
        parse_config("[run]\ngrid = 10\nmode = float\n[operator U]\nfamily = uninorm-min, e = 0.25, t = min, s = max\n")
            .unwrap();
    }

    #[test]
    fn fractions_survive_exactly() {
        let cfg = parse_config("[run]\ngrid=10\nalpha = 7/10\n").unwrap();
        assert_eq!(cfg.alpha.unwrap().value, r(7, 10));
    }

    #[test]
    fn structural_errors_carry_lines() {
        let cases = [
            ("grid = 3\n", 1),
            ("[run]\ngrid 3\n", 2),
            ("[run]\ngrid = 3\ngrid = 4\n", 3),
            ("[run]\nspeed = 3\n", 2),
            ("[run]\n[operator U]\nfamily = min, e = 0.5\n", 3),
            ("[operator U]\nfamily = nope\n", 2),
            ("[sideways]\n", 1),
            ("[run]\nalpha = x\n", 2),
        ];
        for (text, line) in cases {
            match parse_config(text) {
                Err(ConfigError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn validation_errors() {
        let cases = [
            "[operator A]\nfamily = min\n[operator A]\nfamily = max\n",
            "[operator N]\nfamily = nullnorm, a = 0.5, s = max, t = T\n",
            "[operator A]\nfamily = dual, inner = B\n[operator B]\nfamily = dual, inner = A\n",
            "[operator min]\nfamily = max\n",
            "[operator U]\nfamily = uninorm-min, e = 0.5, t = min\n",
            "[run]\nu1 = nothing\n",
        ];
        for text in cases {
            assert!(matches!(parse_config(text), Err(ConfigError::Validation { .. })), "{text:?}");
        }
    }

    #[test]
    fn references_and_tables() {
        let text = "\
[run]
grid = 2
[operator N]
family = nullnorm, a = 1/2, s = S, t = min
[operator S]
family = dual, inner = lukasiewicz
[operator T]
family = table
row = 0 0 0
row = 0 0.5 0.5
row = 0 0.5 1
triple = 1 1 1
";
        let cfg = parse_config(text).unwrap();
        let n = cfg.resolve("N").unwrap();
        assert_eq!(n.spec.family_name(), "nullnorm");
        let t = cfg.resolve("T").unwrap();
        assert!(matches!(t.spec, OperatorSpec::Table(_)));
        assert_eq!(t.triple.unwrap().indices(), (2, 2, 2));
    }

    #[test]
    fn table_rows() {
        let g = make_grid(1).unwrap();
        assert_eq!(parse_table_rows(&["0 0", "0 1"], g).unwrap().entries(), &[0, 0, 0, 1]);
        assert_eq!(parse_table_rows(&["0 0"], g).unwrap_err().0, 1);
        assert_eq!(parse_table_rows(&["0 0", "0 1/2"], g).unwrap_err().0, 1);
        assert_eq!(parse_table_rows(&["0 0", "0"], g).unwrap_err().0, 1);
    }

    #[test]
    fn grid_can_be_supplied_later() {
        let mut cfg = parse_config("[operator U]\nfamily = example-2uninorm, e = 0.25, a = 0.5, f = 1\n").unwrap();
        cfg.grid = Some(Located { value: 4, line: 0 });
        cfg.validate().unwrap();
        cfg.grid = Some(Located { value: 10, line: 0 });
        assert!(cfg.validate().is_err());
    }
}
