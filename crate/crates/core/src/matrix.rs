//! Dense binary matrices with at most 64 rows and 64 columns.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{low_mask, MAX_LEN};

/// A binary matrix stored row-wise; bit `j` of a row is column `j + 1`.
///
/// Column values read the top row as the least significant bit, so
/// `column(j)` has bit `r` set iff row `r` has a one in column `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    rows: Vec<u64>,
    ncols: usize,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<u64>, ncols: usize) -> Result<Self> {
        if ncols == 0 || ncols > MAX_LEN {
            return Err(Error::LengthOutOfRange(ncols));
        }
        if rows.len() > MAX_LEN {
            return Err(Error::DimensionMismatch(format!(
                "{} rows exceeds the 64-row limit",
                rows.len()
            )));
        }
        if let Some(&r) = rows.iter().find(|&&r| r & !low_mask(ncols) != 0) {
            return Err(Error::StrayBits { bits: r, len: ncols });
        }
        Ok(Self { rows, ncols })
    }

    /// Builds a `nrows x columns.len()` matrix from column values.
    pub fn from_columns(columns: &[u64], nrows: usize) -> Result<Self> {
        if nrows > MAX_LEN {
            return Err(Error::DimensionMismatch(format!("{nrows} rows exceeds 64")));
        }
        if let Some(&c) = columns.iter().find(|&&c| c & !low_mask(nrows) != 0) {
            return Err(Error::StrayBits { bits: c, len: nrows });
        }
        let mut rows = vec![0u64; nrows];
        for (j, &c) in columns.iter().enumerate() {
            for (r, row) in rows.iter_mut().enumerate() {
                *row |= (c >> r & 1) << j;
            }
        }
        Self::from_rows(rows, columns.len())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_rows((0..n).map(|i| 1u64 << i).collect(), n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row] >> col & 1 == 1
    }

    /// Value of 0-based column `col`.
    pub fn column(&self, col: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | (row >> col & 1) << r)
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// `H * w^T` as a column value.
    #[inline]
    pub fn syndrome(&self, w: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | u64::from((row & w).count_ones() & 1) << r)
    }

    /// Deletes one row and one column (both 0-based).
    pub fn delete(&self, row: usize, col: usize) -> Result<Self> {
        let lo = low_mask(col);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != row)
            .map(|(_, &v)| (v & lo) | (v >> 1 & !lo))
            .collect();
        Self::from_rows(rows, self.ncols - 1)
    }

    /// Reduced row echelon form; returns the pivot columns in order.
    fn rref(&self) -> (Vec<u64>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            let bit = 1u64 << col;
            let Some(p) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{ w : H w^T = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<u64> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = 1u64 << free;
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row >> free & 1 == 1 {
                        v |= 1 << p;
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    /// One row per line, column 1 leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            for j in 0..self.ncols {
                f.write_str(if row >> j & 1 == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut ncols = None;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let width = line.len();
            match ncols {
                None => ncols = Some(width),
                Some(w) if w != width => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("row has {width} columns, expected {w}"),
                    })
                }
                _ => {}
            }
            if width > MAX_LEN {
                return Err(Error::LengthOutOfRange(width));
            }
            let mut row = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row |= 1 << j,
                    other => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
            rows.push(row);
        }
        let ncols = ncols.ok_or(Error::Parse {
            line: 0,
            msg: "empty matrix".into(),
        })?;
        Self::from_rows(rows, ncols)
    }
}
