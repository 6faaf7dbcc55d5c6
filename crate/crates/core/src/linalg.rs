//! Dense rational vectors and matrices.
//!
//! Deliberately small: the cones live in dimensions a person can write down,
//! so everything is dense, exact, and clone-friendly.

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::Zero;

/// Coordinate vector over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn add(&self, other: &RVector) -> RVector {
        debug_assert_eq!(self.dim(), other.dim());
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        debug_assert_eq!(self.dim(), other.dim());
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, factor: &Rational) -> RVector {
        RVector(self.0.iter().map(|a| a * factor).collect())
    }

    /// Sanity guard used by the public cone operations.
    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                actual: self.dim(),
            })
        }
    }
}

impl std::ops::Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for RVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl From<Vec<Rational>> for RVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl std::fmt::Display for RVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<RVector>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, RVector::dim);
        assert!(rows.iter().all(|r| r.dim() == ncols), "ragged rows");
        let data = rows.into_iter().flat_map(|r| r.0).collect();
        Self {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Columns are the given vectors.
    pub fn from_columns(cols: &[RVector]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, RVector::dim);
        assert!(cols.iter().all(|c| c.dim() == nrows), "ragged columns");
        let mut m = Self::zeros(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..nrows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> RVector {
        RVector(self.row(r).to_vec())
    }

    pub fn column(&self, c: usize) -> RVector {
        RVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn mul_vec(&self, v: &RVector) -> RVector {
        debug_assert_eq!(self.cols, v.dim());
        RVector(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(v.iter())
                        .map(|(a, b)| a * b)
                        .fold(Rational::zero(), |acc, t| acc + t)
                })
                .collect(),
        )
    }

    /// `Mᵀ v`, without materializing the transpose.
    pub fn transpose_mul_vec(&self, v: &RVector) -> RVector {
        debug_assert_eq!(self.rows, v.dim());
        let mut out = vec![Rational::zero(); self.cols];
        for r in 0..self.rows {
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &(self.get(r, c) * &v[r]);
            }
        }
        RVector(out)
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rank over ℚ by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let at = |w: &Vec<Rational>, r: usize, c: usize| w[r * n + c].clone();
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..n {
            if pivot_row >= m {
                break;
            }
            let Some(pr) = (pivot_row..m).find(|&r| !at(&work, r, col).is_zero()) else {
                continue;
            };
            for c in 0..n {
                work.swap(pivot_row * n + c, pr * n + c);
            }
            let pivot = at(&work, pivot_row, col);
            for r in (pivot_row + 1)..m {
                let factor = &at(&work, r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let val = at(&work, r, c) - &factor * at(&work, pivot_row, c);
                    work[r * n + c] = val;
                }
            }
            pivot_row += 1;
            rank += 1;
        }
        rank
    }
}
