use std::fmt;

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use crate::axioms;
use crate::grid::{snap, snap_rational, GridPoint, ToleranceConfig, UnitGrid};

use super::{NeutralTriple, OperatorError, OperatorTable, Result};

/// Exact parameter value in `[0, 1]`.
pub type Param = Rational64;

/// Description of an operator family.
///
/// Parameters are exact rationals so one description can be discretized on
/// any grid that hosts them. Rescaled components are evaluated by the affine
/// map `lo + (hi − lo)·op((x − lo)/(hi − lo), (y − lo)/(hi − lo))`.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    Min,
    Max,
    Product,
    Lukasiewicz,
    Drastic,
    /// `1 − inner(1 − x, 1 − y)`.
    DualConorm(Box<OperatorSpec>),
    /// `t` rescaled to `[0,e]²`, `s` rescaled to `[e,1]²`, `min` elsewhere.
    UninormMinClass {
        e: Param,
        t: Box<OperatorSpec>,
        s: Box<OperatorSpec>,
    },
    /// As [`OperatorSpec::UninormMinClass`] with `max` on the mixed block.
    UninormMaxClass {
        e: Param,
        t: Box<OperatorSpec>,
        s: Box<OperatorSpec>,
    },
    /// `s` rescaled to `[0,a]²`, `t` rescaled to `[a,1]²`, `a` elsewhere.
    Nullnorm {
        a: Param,
        s: Box<OperatorSpec>,
        t: Box<OperatorSpec>,
    },
    /// `min` on `[0,e]² ∪ [a,f]²`, then `a` on
    /// `[0,a]×[a,f] ∪ [a,f]×[0,a]`, then `max`.
    Example2Uninorm { e: Param, a: Param, f: Param },
    /// `low` rescaled to `[0,a]²`, `high` rescaled to `[a,1]²`, constant `a`
    /// on both mixed blocks.
    GluedTwoUninorm {
        a: Param,
        low: Box<OperatorSpec>,
        high: Box<OperatorSpec>,
    },
    Table(OperatorTable),
}

fn unit(p: Param, name: &'static str) -> Result<Param> {
    if p < Param::zero() || p > Param::one() {
        return Err(OperatorError::ParameterRange {
            name,
            value: p.to_string(),
        });
    }
    Ok(p)
}

impl OperatorSpec {
    pub fn example(e: Param, a: Param, f: Param) -> Result<Self> {
        let (e, a, f) = (unit(e, "e")?, unit(a, "a")?, unit(f, "f")?);
        if e > a || a > f {
            return Err(OperatorError::TripleOrder {
                e: e.to_string(),
                a: a.to_string(),
                f: f.to_string(),
            });
        }
        Ok(OperatorSpec::Example2Uninorm { e, a, f })
    }

    pub fn dual(inner: OperatorSpec) -> Self {
        OperatorSpec::DualConorm(Box::new(inner))
    }

    pub fn uninorm_min(e: Param, t: OperatorSpec, s: OperatorSpec) -> Result<Self> {
        Ok(OperatorSpec::UninormMinClass {
            e: unit(e, "e")?,
            t: Box::new(t),
            s: Box::new(s),
        })
    }

    pub fn uninorm_max(e: Param, t: OperatorSpec, s: OperatorSpec) -> Result<Self> {
        Ok(OperatorSpec::UninormMaxClass {
            e: unit(e, "e")?,
            t: Box::new(t),
            s: Box::new(s),
        })
    }

    pub fn nullnorm(a: Param, s: OperatorSpec, t: OperatorSpec) -> Result<Self> {
        Ok(OperatorSpec::Nullnorm {
            a: unit(a, "a")?,
            s: Box::new(s),
            t: Box::new(t),
        })
    }

    pub fn glued(a: Param, low: OperatorSpec, high: OperatorSpec) -> Result<Self> {
        Ok(OperatorSpec::GluedTwoUninorm {
            a: unit(a, "a")?,
            low: Box::new(low),
            high: Box::new(high),
        })
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            OperatorSpec::Min => "min",
            OperatorSpec::Max => "max",
            OperatorSpec::Product => "product",
            OperatorSpec::Lukasiewicz => "lukasiewicz",
            OperatorSpec::Drastic => "drastic",
            OperatorSpec::DualConorm(_) => "dual",
            OperatorSpec::UninormMinClass { .. } => "uninorm-min",
            OperatorSpec::UninormMaxClass { .. } => "uninorm-max",
            OperatorSpec::Nullnorm { .. } => "nullnorm",
            OperatorSpec::Example2Uninorm { .. } => "example-2uninorm",
            OperatorSpec::GluedTwoUninorm { .. } => "glued",
            OperatorSpec::Table(_) => "table",
        }
    }

    /// All scalar parameters, including those of nested components.
    pub fn parameters(&self) -> Vec<(&'static str, Param)> {
        let mut out = Vec::new();
        self.collect_parameters(&mut out);
        out
    }

    fn collect_parameters(&self, out: &mut Vec<(&'static str, Param)>) {
        match self {
            OperatorSpec::DualConorm(inner) => inner.collect_parameters(out),
            OperatorSpec::UninormMinClass { e, t, s } | OperatorSpec::UninormMaxClass { e, t, s } => {
                out.push(("e", *e));
                t.collect_parameters(out);
                s.collect_parameters(out);
            }
            OperatorSpec::Nullnorm { a, s, t } => {
                out.push(("a", *a));
                s.collect_parameters(out);
                t.collect_parameters(out);
            }
            OperatorSpec::Example2Uninorm { e, a, f } => {
                out.extend([("e", *e), ("a", *a), ("f", *f)]);
            }
            OperatorSpec::GluedTwoUninorm { a, low, high } => {
                out.push(("a", *a));
                low.collect_parameters(out);
                high.collect_parameters(out);
            }
            _ => {}
        }
    }

    /// Checks that every top-level parameter is a point of `grid`.
    ///
    /// Parameters of rescaled components live on the component's own unit
    /// interval and are not required to be grid points.
    pub fn check_aligned(&self, grid: UnitGrid) -> Result<()> {
        let top: Vec<(&'static str, Param)> = match self {
            OperatorSpec::UninormMinClass { e, .. } | OperatorSpec::UninormMaxClass { e, .. } => vec![("e", *e)],
            OperatorSpec::Nullnorm { a, .. } | OperatorSpec::GluedTwoUninorm { a, .. } => vec![("a", *a)],
            OperatorSpec::Example2Uninorm { e, a, f } => vec![("e", *e), ("a", *a), ("f", *f)],
            OperatorSpec::DualConorm(inner) => return inner.check_aligned(grid),
            OperatorSpec::Table(t) if t.grid() != grid => {
                return Err(OperatorError::GridMismatch {
                    expected: grid.n(),
                    found: t.grid().n(),
                })
            }
            _ => Vec::new(),
        };
        for (name, value) in top {
            grid.index_of(value).map_err(|_| OperatorError::ParameterNotOnGrid {
                name,
                value: value.to_string(),
                n: grid.n(),
            })?;
        }
        Ok(())
    }

    /// The 2-neutral element the construction is designed to carry, when it
    /// is determined by the parameters alone.
    pub fn natural_triple(&self) -> Option<(Param, Param, Param)> {
        let one = Param::one();
        let zero = Param::zero();
        match self {
            OperatorSpec::Min | OperatorSpec::Product | OperatorSpec::Lukasiewicz | OperatorSpec::Drastic => {
                Some((one, one, one))
            }
            OperatorSpec::Max => Some((zero, zero, zero)),
            OperatorSpec::DualConorm(inner) => {
                let (e, a, f) = inner.natural_triple()?;
                Some((one - f, one - a, one - e))
            }
            OperatorSpec::UninormMinClass { e, .. } | OperatorSpec::UninormMaxClass { e, .. } => Some((*e, *e, *e)),
            OperatorSpec::Nullnorm { a, .. } => Some((zero, *a, one)),
            OperatorSpec::Example2Uninorm { e, a, f } => Some((*e, *a, *f)),
            OperatorSpec::GluedTwoUninorm { a, low, high } => {
                let (el, al, fl) = low.natural_triple()?;
                let (eh, ah, fh) = high.natural_triple()?;
                if el != al || al != fl || eh != ah || ah != fh {
                    return None;
                }
                Some((*a * el, *a, *a + (one - *a) * eh))
            }
            OperatorSpec::Table(_) => None,
        }
    }

    /// [`OperatorSpec::natural_triple`] as grid points.
    pub fn natural_triple_on(&self, grid: UnitGrid) -> Option<Result<NeutralTriple>> {
        let (e, a, f) = self.natural_triple()?;
        Some((|| {
            let pt = |v: Param| snap_rational(v, grid).map_err(OperatorError::from);
            NeutralTriple::new(pt(e)?, pt(a)?, pt(f)?)
        })())
    }

    /// Exact value of the operator at rational arguments.
    pub fn eval_exact(&self, x: Param, y: Param) -> Result<Param> {
        let zero = Param::zero();
        let one = Param::one();
        Ok(match self {
            OperatorSpec::Min => x.min(y),
            OperatorSpec::Max => x.max(y),
            OperatorSpec::Product => x * y,
            OperatorSpec::Lukasiewicz => (x + y - one).max(zero),
            OperatorSpec::Drastic => {
                if x == one {
                    y
                } else if y == one {
                    x
                } else {
                    zero
                }
            }
            OperatorSpec::DualConorm(inner) => one - inner.eval_exact(one - x, one - y)?,
            OperatorSpec::UninormMinClass { e, t, s } | OperatorSpec::UninormMaxClass { e, t, s } => {
                if x <= *e && y <= *e {
                    rescaled_exact(t, zero, *e, x, y)?
                } else if x >= *e && y >= *e {
                    rescaled_exact(s, *e, one, x, y)?
                } else if matches!(self, OperatorSpec::UninormMinClass { .. }) {
                    x.min(y)
                } else {
                    x.max(y)
                }
            }
            OperatorSpec::Nullnorm { a, s, t } => {
                if x <= *a && y <= *a {
                    rescaled_exact(s, zero, *a, x, y)?
                } else if x >= *a && y >= *a {
                    rescaled_exact(t, *a, one, x, y)?
                } else {
                    *a
                }
            }
            OperatorSpec::Example2Uninorm { e, a, f } => {
                let low = |v: Param| v <= *e;
                let mid = |v: Param| *a <= v && v <= *f;
                let below_a = |v: Param| v <= *a;
                if (low(x) && low(y)) || (mid(x) && mid(y)) {
                    x.min(y)
                } else if (below_a(x) && mid(y)) || (mid(x) && below_a(y)) {
                    *a
                } else {
                    x.max(y)
                }
            }
            OperatorSpec::GluedTwoUninorm { a, low, high } => {
                if x <= *a && y <= *a {
                    rescaled_exact(low, zero, *a, x, y)?
                } else if x >= *a && y >= *a {
                    rescaled_exact(high, *a, one, x, y)?
                } else {
                    *a
                }
            }
            OperatorSpec::Table(table) => {
                let grid = table.grid();
                let i = grid.index_of(x)? as usize;
                let j = grid.index_of(y)? as usize;
                table.point(table.get(i, j)).value()
            }
        })
    }

    /// Floating-point value at arbitrary arguments. Table variants only
    /// accept arguments within `cfg.eps` of a grid point.
    pub fn eval_f64(&self, x: f64, y: f64, cfg: ToleranceConfig) -> Result<f64> {
        let p = |v: &Param| v.to_f64().unwrap_or(f64::NAN);
        Ok(match self {
            OperatorSpec::Min => x.min(y),
            OperatorSpec::Max => x.max(y),
            OperatorSpec::Product => x * y,
            OperatorSpec::Lukasiewicz => (x + y - 1.0).max(0.0),
            OperatorSpec::Drastic => {
                if x == 1.0 {
                    y
                } else if y == 1.0 {
                    x
                } else {
                    0.0
                }
            }
            OperatorSpec::DualConorm(inner) => 1.0 - inner.eval_f64(1.0 - x, 1.0 - y, cfg)?,
            OperatorSpec::UninormMinClass { e, t, s } | OperatorSpec::UninormMaxClass { e, t, s } => {
                let e = p(e);
                if x <= e && y <= e {
                    rescaled_f64(t, 0.0, e, x, y, cfg)?
                } else if x >= e && y >= e {
                    rescaled_f64(s, e, 1.0, x, y, cfg)?
                } else if matches!(self, OperatorSpec::UninormMinClass { .. }) {
                    x.min(y)
                } else {
                    x.max(y)
                }
            }
            OperatorSpec::Nullnorm { a, s, t } => {
                let a = p(a);
                if x <= a && y <= a {
                    rescaled_f64(s, 0.0, a, x, y, cfg)?
                } else if x >= a && y >= a {
                    rescaled_f64(t, a, 1.0, x, y, cfg)?
                } else {
                    a
                }
            }
            OperatorSpec::Example2Uninorm { e, a, f } => {
                let (e, a, f) = (p(e), p(a), p(f));
                let low = |v: f64| v <= e;
                let mid = |v: f64| a <= v && v <= f;
                let below_a = |v: f64| v <= a;
                if (low(x) && low(y)) || (mid(x) && mid(y)) {
                    x.min(y)
                } else if (below_a(x) && mid(y)) || (mid(x) && below_a(y)) {
                    a
                } else {
                    x.max(y)
                }
            }
            OperatorSpec::GluedTwoUninorm { a, low, high } => {
                let a = p(a);
                if x <= a && y <= a {
                    rescaled_f64(low, 0.0, a, x, y, cfg)?
                } else if x >= a && y >= a {
                    rescaled_f64(high, a, 1.0, x, y, cfg)?
                } else {
                    a
                }
            }
            OperatorSpec::Table(table) => {
                let grid = table.grid();
                let i = snap(x, grid, cfg)?;
                let j = snap(y, grid, cfg)?;
                table.at(i, j)?.to_f64()
            }
        })
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::DualConorm(inner) => write!(f, "dual({inner})"),
            OperatorSpec::UninormMinClass { e, t, s } => write!(f, "uninorm-min(e={e}, t={t}, s={s})"),
            OperatorSpec::UninormMaxClass { e, t, s } => write!(f, "uninorm-max(e={e}, t={t}, s={s})"),
            OperatorSpec::Nullnorm { a, s, t } => write!(f, "nullnorm(a={a}, s={s}, t={t})"),
            OperatorSpec::Example2Uninorm { e, a, f: ff } => write!(f, "example-2uninorm(e={e}, a={a}, f={ff})"),
            OperatorSpec::GluedTwoUninorm { a, low, high } => write!(f, "glued(a={a}, low={low}, high={high})"),
            OperatorSpec::Table(t) => write!(f, "table(n={})", t.grid().n()),
            other => f.write_str(other.family_name()),
        }
    }
}

fn rescaled_exact(spec: &OperatorSpec, lo: Param, hi: Param, x: Param, y: Param) -> Result<Param> {
    let width = hi - lo;
    if width.is_zero() {
        return Ok(lo);
    }
    Ok(lo + width * spec.eval_exact((x - lo) / width, (y - lo) / width)?)
}

fn rescaled_f64(spec: &OperatorSpec, lo: f64, hi: f64, x: f64, y: f64, cfg: ToleranceConfig) -> Result<f64> {
    let width = hi - lo;
    if width == 0.0 {
        return Ok(lo);
    }
    Ok(lo + width * spec.eval_f64((x - lo) / width, (y - lo) / width, cfg)?)
}

/// Value of `spec` at two grid points, snapped exactly onto the same grid.
pub fn evaluate(spec: &OperatorSpec, x: GridPoint, y: GridPoint) -> Result<GridPoint> {
    x.same_grid(y)?;
    let grid = x.grid();
    if let OperatorSpec::Table(table) = spec {
        return table.at(x, y);
    }
    spec.check_aligned(grid)?;
    let value = spec.eval_exact(x.value(), y.value())?;
    snap_rational(value, grid).map_err(|_| OperatorError::ValueNotOnGrid {
        x: x.to_string(),
        y: y.to_string(),
        value: value.to_string(),
        n: grid.n(),
    })
}

/// Exact Cayley table of `spec` on `grid`.
///
/// Glued constructions are re-verified against the axiom suite and rejected
/// if they fail it.
pub fn discretize(spec: &OperatorSpec, grid: UnitGrid) -> Result<OperatorTable> {
    if let OperatorSpec::Table(table) = spec {
        spec.check_aligned(grid)?;
        return Ok(table.clone());
    }
    spec.check_aligned(grid)?;
    let points: Vec<GridPoint> = grid.carrier().collect();
    let mut entries = Vec::with_capacity(grid.len() * grid.len());
    for &x in &points {
        for &y in &points {
            entries.push(evaluate(spec, x, y)?.index() as u16);
        }
    }
    let table = OperatorTable::from_entries(grid, entries)?;
    if let OperatorSpec::GluedTwoUninorm { .. } = spec {
        let triple = match spec.natural_triple_on(grid) {
            Some(t) => Some(t?),
            None => None,
        };
        let report = axioms::axiom_report(&table);
        let has_triple = match triple {
            Some(t) => report.triples.contains(&t),
            None => !report.triples.is_empty(),
        };
        if !(report.is_ok() && has_triple) {
            return Err(OperatorError::NotA2Uninorm {
                spec: spec.to_string(),
                reason: report.failure_summary().unwrap_or_else(|| "missing 2-neutral element".into()),
            });
        }
    }
    Ok(table)
}

/// Float-mode table of values, unsnapped.
pub fn discretize_f64(spec: &OperatorSpec, grid: UnitGrid, cfg: ToleranceConfig) -> Result<Vec<Vec<f64>>> {
    grid.carrier()
        .map(|x| {
            grid.carrier()
                .map(|y| spec.eval_f64(x.to_f64(), y.to_f64(), cfg))
                .collect()
        })
        .collect()
}

/// Values of `spec` rescaled into `[lo, hi]²`, restricted to the grid points
/// of that square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RescaledBlock {
    lo: GridPoint,
    hi: GridPoint,
    entries: Vec<u16>,
}

impl RescaledBlock {
    pub fn lo(&self) -> GridPoint {
        self.lo
    }

    pub fn hi(&self) -> GridPoint {
        self.hi
    }

    /// Value at `(x, y)` for `x, y ∈ [lo, hi]`.
    pub fn value(&self, x: GridPoint, y: GridPoint) -> Option<GridPoint> {
        let (lo, hi) = (self.lo.index(), self.hi.index());
        if !(lo..=hi).contains(&x.index()) || !(lo..=hi).contains(&y.index()) {
            return None;
        }
        let side = (hi - lo + 1) as usize;
        let v = self.entries[(x.index() - lo) as usize * side + (y.index() - lo) as usize];
        self.lo.grid().point(u32::from(v)).ok()
    }
}

pub fn rescale_into(spec: &OperatorSpec, lo: GridPoint, hi: GridPoint) -> Result<RescaledBlock> {
    lo.same_grid(hi)?;
    if lo.index() >= hi.index() {
        return Err(OperatorError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let grid = lo.grid();
    let mut entries = Vec::new();
    for i in lo.index()..=hi.index() {
        for j in lo.index()..=hi.index() {
            let x = grid.point(i)?;
            let y = grid.point(j)?;
            let value = rescaled_exact(spec, lo.value(), hi.value(), x.value(), y.value())?;
            let p = snap_rational(value, grid).map_err(|_| OperatorError::ValueNotOnGrid {
                x: x.to_string(),
                y: y.to_string(),
                value: value.to_string(),
                n: grid.n(),
            })?;
            entries.push(p.index() as u16);
        }
    }
    Ok(RescaledBlock { lo, hi, entries })
}
