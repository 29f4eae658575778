//! Exact discretization of the unit interval.
//!
//! A [`UnitGrid`] with `n` subdivisions has carrier `{ i/n : i = 0..=n }`.
//! Points are stored as integer indices; the rational value `i/n` is derived
//! on demand, so equality and order are index comparisons and never involve
//! a tolerance.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{CheckedDiv, CheckedMul, One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Largest supported number of subdivisions. Tables are dense
/// `(n+1)×(n+1)` arrays of `u16` indices.
pub const MAX_SUBDIVISIONS: u32 = 4096;

/// Default epsilon for float-mode comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid must have at least one subdivision")]
    EmptyGrid,
    #[error("grid with {0} subdivisions exceeds the supported maximum of {MAX_SUBDIVISIONS}")]
    TooLarge(u32),
    #[error("value {value} is outside [0, 1]")]
    OutOfRange { value: String },
    #[error("value {value} is not a point of the grid with n = {n}")]
    NotOnGrid { value: String, n: u32 },
    #[error("index {index} exceeds grid size n = {n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("points from different grids (n = {left} and n = {right})")]
    GridMismatch { left: u32, right: u32 },
    #[error("malformed numeric literal {0:?}")]
    BadLiteral(String),
    #[error("negative epsilon {0}")]
    NegativeEpsilon(String),
}

pub type Result<T, E = GridError> = std::result::Result<T, E>;

/// The chain `{0, 1/n, ..., 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitGrid {
    n: u32,
}

impl UnitGrid {
    pub fn new(n: u32) -> Result<Self> {
        make_grid(n)
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    /// Number of carrier points, `n + 1`.
    #[inline]
    pub fn len(self) -> usize {
        self.n as usize + 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    pub fn point(self, index: u32) -> Result<GridPoint> {
        if index > self.n {
            return Err(GridError::IndexOutOfRange { index, n: self.n });
        }
        Ok(GridPoint { index, n: self.n })
    }

    pub fn zero(self) -> GridPoint {
        GridPoint { index: 0, n: self.n }
    }

    pub fn one(self) -> GridPoint {
        GridPoint {
            index: self.n,
            n: self.n,
        }
    }

    pub fn carrier(self) -> impl DoubleEndedIterator<Item = GridPoint> + Clone {
        let n = self.n;
        (0..=n).map(move |index| GridPoint { index, n })
    }

    /// Index of an exact rational value, if it lies on the carrier.
    pub fn index_of(self, value: Rational64) -> Result<u32> {
        if value < Rational64::zero() || value > Rational64::one() {
            return Err(GridError::OutOfRange {
                value: value.to_string(),
            });
        }
        // Overflow means the reduced denominator is far larger than n.
        let scaled = value.checked_mul(&Rational64::from_integer(i64::from(self.n)));
        if let Some(s) = scaled.filter(|s| s.is_integer()) {
            Ok(s.to_integer() as u32)
        } else {
            Err(GridError::NotOnGrid {
                value: value.to_string(),
                n: self.n,
            })
        }
    }

    pub fn contains(self, value: Rational64) -> bool {
        self.index_of(value).is_ok()
    }
}

impl fmt::Display for UnitGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid(n={})", self.n)
    }
}

pub fn make_grid(n: u32) -> Result<UnitGrid> {
    if n == 0 {
        return Err(GridError::EmptyGrid);
    }
    if n > MAX_SUBDIVISIONS {
        return Err(GridError::TooLarge(n));
    }
    Ok(UnitGrid { n })
}

/// An element `index/n` of a [`UnitGrid`].
///
/// Points on the same grid compare by index. Comparing points from different
/// grids yields `None` from `partial_cmp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    index: u32,
    n: u32,
}

impl GridPoint {
    #[inline]
    pub fn index(self) -> u32 {
        self.index
    }

    #[inline]
    pub fn grid(self) -> UnitGrid {
        UnitGrid { n: self.n }
    }

    pub fn value(self) -> Rational64 {
        Rational64::new(i64::from(self.index), i64::from(self.n))
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.index) / f64::from(self.n)
    }

    /// Same rational value expressed on another grid.
    pub fn regrid(self, grid: UnitGrid) -> Result<GridPoint> {
        grid.point(grid.index_of(self.value())?)
    }

    pub fn same_grid(self, other: GridPoint) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(GridError::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

impl PartialOrd for GridPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.n == other.n).then(|| self.index.cmp(&other.index))
    }
}

/// Serialized as its rational value, e.g. `"0.75"` or `"1/3"`.
impl Serialize for GridPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.value()))
    }
}

/// Formats a value in `[0, 1]` as a terminating decimal when one exists,
/// otherwise as a reduced fraction `p/q`.
pub fn format_rational(value: Rational64) -> String {
    let (num, den) = (*value.numer(), *value.denom());
    let mut d = den;
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 || twos.max(fives) > 30 {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits);
    let scaled = i128::from(num) * scale / i128::from(den);
    let int_part = scaled / scale;
    let frac_part = (scaled % scale).abs();
    if digits == 0 {
        format!("{int_part}")
    } else {
        let frac = format!("{frac_part:0width$}", width = digits as usize);
        format!("{int_part}.{}", frac.trim_end_matches('0'))
    }
}

/// Parses a non-negative decimal (`0.25`, `1`, `.5`) or fraction (`7/10`)
/// literal into an exact rational.
pub fn parse_scalar(text: &str) -> Result<Rational64> {
    let bad = || GridError::BadLiteral(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(bad)?;
        let den = parse_decimal(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(bad());
        }
        return num.checked_div(&den).ok_or_else(bad);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational64> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    let denom = 10i64.checked_pow(u32::try_from(frac_part.len()).ok()?)?;
    Some(Rational64::new(numer, denom))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact|float)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Scalar comparison policy. Exact mode never uses `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceConfig {
    mode: Mode,
    eps: f64,
}

impl ToleranceConfig {
    pub fn exact() -> Self {
        ToleranceConfig {
            mode: Mode::Exact,
            eps: 0.0,
        }
    }

    pub fn float(eps: f64) -> Result<Self> {
        if eps.is_nan() || eps < 0.0 {
            return Err(GridError::NegativeEpsilon(eps.to_string()));
        }
        Ok(ToleranceConfig {
            mode: Mode::Float,
            eps,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Float-mode equality `|a − b| ≤ eps`. Exact mode compares bitwise.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        match self.mode {
            Mode::Exact => a == b,
            Mode::Float => (a - b).abs() <= self.eps,
        }
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig::exact()
    }
}

/// Maps a real value onto the grid.
///
/// In exact mode the `f64` is read as its shortest round-trip decimal literal
/// (so `0.7` means `7/10`) and must land exactly on the carrier. In float mode
/// the nearest carrier point within `eps` is returned.
pub fn snap(value: f64, grid: UnitGrid, cfg: ToleranceConfig) -> Result<GridPoint> {
    let out_of_range = || GridError::OutOfRange {
        value: value.to_string(),
    };
    if !value.is_finite() {
        return Err(out_of_range());
    }
    match cfg.mode {
        Mode::Exact => {
            if !(0.0..=1.0).contains(&value) {
                return Err(out_of_range());
            }
            let not_on_grid = || GridError::NotOnGrid {
                value: value.to_string(),
                n: grid.n,
            };
            let exact = parse_scalar(&value.to_string()).map_err(|_| not_on_grid())?;
            grid.point(grid.index_of(exact)?)
        }
        Mode::Float => {
            if value < -cfg.eps || value > 1.0 + cfg.eps {
                return Err(out_of_range());
            }
            let n = f64::from(grid.n);
            let nearest = (value * n).round().clamp(0.0, n);
            if (nearest / n - value).abs() <= cfg.eps {
                grid.point(nearest.to_u32().unwrap_or(0))
            } else {
                Err(GridError::NotOnGrid {
                    value: value.to_string(),
                    n: grid.n,
                })
            }
        }
    }
}

/// Exact-mode snap of a rational value.
pub fn snap_rational(value: Rational64, grid: UnitGrid) -> Result<GridPoint> {
    grid.point(grid.index_of(value)?)
}
