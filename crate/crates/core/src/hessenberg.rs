//! Sparse upper Hessenberg matrices with nonzero subdiagonals.
//!
//! Indices are 1-based throughout, so the subdiagonal entries are `(j+1, j)` for
//! `1 ≤ j < dim`. Only nonzero values are stored.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Scalar usable as a matrix entry: exact rationals or doubles.
pub trait Scalar: Clone + PartialOrd + fmt::Debug + Signed {}

impl<T: Clone + PartialOrd + fmt::Debug + Signed> Scalar for T {}

#[derive(Clone, Debug, PartialEq)]
pub struct Hessenberg<T> {
    dim: usize,
    entries: BTreeMap<(usize, usize), T>,
}

/// Exact rational entries.
pub type SparseHessenberg = Hessenberg<BigRational>;

/// Floating entries, for companions with irrational data.
pub type FloatHessenberg = Hessenberg<f64>;

impl<T: Scalar> Hessenberg<T> {
    /// Builds a matrix from 1-based `(row, col, value)` triples.
    ///
    /// Zero values are dropped. Fails on positions below the subdiagonal, outside the
    /// matrix, or when a subdiagonal position is missing or zero.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        if dim == 0 {
            return Err(Error::DimensionTooSmall);
        }
        let mut map = BTreeMap::new();
        for (row, col, value) in entries {
            if row == 0 || col == 0 || row > dim || col > dim {
                return Err(Error::IndexOutsideMatrix { row, col, dim });
            }
            if col + 1 < row {
                if value.is_zero() {
                    continue;
                }
                return Err(Error::NotHessenberg { row, col });
            }
            if value.is_zero() {
                map.remove(&(row, col));
            } else {
                map.insert((row, col), value);
            }
        }
        let m = Hessenberg { dim, entries: map };
        m.check_subdiagonal()?;
        Ok(m)
    }

    fn check_subdiagonal(&self) -> Result<()> {
        match (1..self.dim).find(|&j| !self.entries.contains_key(&(j + 1, j))) {
            Some(j) => Err(Error::ZeroSubdiagonal { row: j + 1, col: j }),
            None => Ok(()),
        }
    }

    /// The 1×1 matrix `[value]`.
    pub fn scalar(value: T) -> Self {
        Hessenberg::from_entries(1, [(1, 1, value)]).expect("1x1 is always Hessenberg")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entry at 1-based `(row, col)`; zero when unstored.
    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(T::zero)
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Stored entries of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &T)> + '_ {
        // at most rows 1..=col+1 can hold entries in column col
        (1..=(col + 1).min(self.dim)).filter_map(move |r| self.entries.get(&(r, col)).map(|v| (r, v)))
    }

    /// Subdiagonal entries `a(j+1, j)` for `j = 1..dim`.
    pub fn subdiagonal(&self) -> Vec<T> {
        (1..self.dim).map(|j| self.get(j + 1, j)).collect()
    }

    /// Maximum absolute entry; zero for the all-zero pattern.
    pub fn height(&self) -> T {
        self.entries
            .values()
            .map(|v| v.abs())
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    }

    /// Distinct entry values, ascending, including zero when any position is unstored.
    pub fn entry_set(&self) -> Vec<T> {
        let mut values: Vec<T> = self.entries.values().cloned().collect();
        if self.entries.len() < self.dim * self.dim {
            values.push(T::zero());
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("entries are ordered"));
        values.dedup();
        values
    }

    /// Row-major dense copy, 0-based.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut dense = vec![vec![T::zero(); self.dim]; self.dim];
        for (&(r, c), v) in &self.entries {
            dense[r - 1][c - 1] = v.clone();
        }
        dense
    }

    /// Copies `self` into `out` with its (1,1) corner at `(offset+1, offset+1)`.
    pub(crate) fn place_into(&self, out: &mut BTreeMap<(usize, usize), T>, offset: usize) {
        for (&(r, c), v) in &self.entries {
            out.insert((r + offset, c + offset), v.clone());
        }
    }

    /// Assembles a matrix from pre-validated parts; the caller upholds the invariants.
    pub(crate) fn from_parts(dim: usize, entries: BTreeMap<(usize, usize), T>) -> Self {
        let m = Hessenberg { dim, entries };
        debug_assert!(m.check_subdiagonal().is_ok());
        debug_assert!(m.entries.iter().all(|(&(r, c), v)| c + 1 >= r && !v.is_zero()));
        m
    }
}

impl SparseHessenberg {
    /// Converts to doubles (entries rounded to nearest).
    pub fn to_float(&self) -> FloatHessenberg {
        let entries = self
            .entries
            .iter()
            .map(|(&k, v)| (k, v.to_f64().expect("rational converts to f64")))
            .collect();
        Hessenberg { dim: self.dim, entries }
    }

    /// `true` when every entry is an integer.
    pub fn is_integer(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Hessenberg<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.to_dense();
        let cells: Vec<Vec<String>> =
            dense.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Exact rational from integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact integer-valued rational.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Builds an exact matrix from a dense row-major integer array.
pub fn from_int_rows(rows: &[&[i64]]) -> Result<SparseHessenberg> {
    let dim = rows.len();
    let entries = rows.iter().enumerate().flat_map(|(r, row)| {
        assert_eq!(row.len(), dim, "square input");
        row.iter().enumerate().map(move |(c, &v)| (r + 1, c + 1, int(v)))
    });
    Hessenberg::from_entries(dim, entries)
}
