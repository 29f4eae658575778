use std::fmt;

use crate::grid::{GridPoint, UnitGrid};

use super::{OperatorError, Result};

/// Complete Cayley table of a binary operation on a finite chain.
///
/// Entries are grid indices stored row-major: `entries[i * (n+1) + j]` is the
/// index of `op(i/n, j/n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorTable {
    grid: UnitGrid,
    entries: Vec<u16>,
}

impl OperatorTable {
    pub fn from_entries(grid: UnitGrid, entries: Vec<u16>) -> Result<Self> {
        let size = grid.len();
        if entries.len() != size * size {
            return Err(OperatorError::TableShape {
                expected: size,
                detail: format!("{} entries", entries.len()),
            });
        }
        if let Some(pos) = entries.iter().position(|&v| u32::from(v) > grid.n()) {
            return Err(OperatorError::EntryOutOfRange {
                row: pos / size,
                col: pos % size,
                value: u32::from(entries[pos]),
                n: grid.n(),
            });
        }
        Ok(OperatorTable { grid, entries })
    }

    pub fn from_rows(grid: UnitGrid, rows: &[Vec<u32>]) -> Result<Self> {
        let size = grid.len();
        if rows.len() != size {
            return Err(OperatorError::TableShape {
                expected: size,
                detail: format!("{} rows", rows.len()),
            });
        }
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(OperatorError::TableShape {
                    expected: size,
                    detail: format!("row {i} has {} entries", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v > grid.n() {
                    return Err(OperatorError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        n: grid.n(),
                    });
                }
                entries.push(v as u16);
            }
        }
        Ok(OperatorTable { grid, entries })
    }

    /// Builds a table from an index-valued function. Panics if `f` returns an
    /// index above `n`.
    pub fn from_fn(grid: UnitGrid, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let size = grid.len();
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let v = f(i, j);
                assert!(v < size, "table entry {v} out of range at ({i},{j})");
                entries.push(v as u16);
            }
        }
        OperatorTable { grid, entries }
    }

    #[inline]
    pub fn grid(&self) -> UnitGrid {
        self.grid
    }

    /// Side length `n + 1`.
    #[inline]
    pub fn size(&self) -> usize {
        self.grid.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        usize::from(self.entries[i * self.size() + j])
    }

    pub fn at(&self, x: GridPoint, y: GridPoint) -> Result<GridPoint> {
        for p in [x, y] {
            if p.grid() != self.grid {
                return Err(OperatorError::GridMismatch {
                    expected: self.grid.n(),
                    found: p.grid().n(),
                });
            }
        }
        let v = self.get(x.index() as usize, y.index() as usize);
        Ok(self.point(v))
    }

    #[inline]
    pub(crate) fn point(&self, index: usize) -> GridPoint {
        self.grid
            .point(index as u32)
            .expect("table entries are validated on construction")
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u16] {
        let size = self.size();
        &self.entries[i * size..(i + 1) * size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u16]> {
        self.entries.chunks(self.size())
    }
}

impl fmt::Debug for OperatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperatorTable(n={})", self.grid.n())?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(u16::to_string).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
