//! Exact integer lattices: column-style Hermite normal form and membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::IntVector;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self> {
        let cols = columns.len();
        let mut entries = vec![BigInt::zero(); rows * cols];
        for (c, v) in columns.iter().enumerate() {
            if v.rank() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: v.rank(),
                });
            }
            for (r, x) in v.entries().iter().enumerate() {
                entries[r * cols + c] = x.clone();
            }
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let columns: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Self::from_columns(n, &columns).expect("unit vectors have matching rank")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

/// Column Hermite normal form: a lower echelon basis of the column lattice.
///
/// Column `j` has a positive pivot at row `pivots[j]`, zeros above it, and
/// entries of earlier columns in that row reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    rows: usize,
    columns: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

pub fn hermite_normal_form(m: &IntegerMatrix) -> HermiteForm {
    let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for r in 0..m.rows() {
        while let Some(best) = (next..cols.len())
            .filter(|&j| !cols[j][r].is_zero())
            .min_by(|&a, &b| cols[a][r].abs().cmp(&cols[b][r].abs()))
        {
            cols.swap(next, best);
            let (head, tail) = cols.split_at_mut(next + 1);
            let pivot_col = &head[next];
            let mut done = true;
            for col in tail.iter_mut() {
                if col[r].is_zero() {
                    continue;
                }
                let q = col[r].div_floor(&pivot_col[r]);
                axpy(col, &q, pivot_col);
                if !col[r].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if next < cols.len() && !cols[next][r].is_zero() {
            if cols[next][r].is_negative() {
                for x in cols[next].iter_mut() {
                    *x = -&*x;
                }
            }
            let (head, tail) = cols.split_at_mut(next);
            let pivot_col = &tail[0];
            for col in head.iter_mut() {
                let q = col[r].div_floor(&pivot_col[r]);
                axpy(col, &q, pivot_col);
            }
            pivots.push(r);
            next += 1;
        }
    }
    cols.truncate(next);
    HermiteForm {
        rows: m.rows(),
        columns: cols,
        pivots,
    }
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    /// Index of the lattice in `Z^rows`, or `None` when the rank is deficient.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.rows {
            return None;
        }
        Some(
            self.columns
                .iter()
                .zip(&self.pivots)
                .fold(BigInt::one(), |acc, (col, &r)| acc * &col[r]),
        )
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut residual = v.to_vec();
        for (col, &r) in self.columns.iter().zip(&self.pivots) {
            if residual[..r].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, rem) = residual[r].div_rem(&col[r]);
            if !rem.is_zero() {
                return Ok(false);
            }
            axpy(&mut residual, &q, col);
        }
        Ok(residual.iter().all(Zero::is_zero))
    }
}

/// Whether `v` is an integer combination of the columns of `basis`.
pub fn lattice_membership(basis: &IntegerMatrix, v: &[BigInt]) -> Result<bool> {
    if v.len() != basis.rows() {
        return Err(Error::DimensionMismatch {
            expected: basis.rows(),
            found: v.len(),
        });
    }
    hermite_normal_form(basis).contains(v)
}
