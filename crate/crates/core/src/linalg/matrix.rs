use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Subspace;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Output of [`Matrix::rref_rank_kernel`].
#[derive(Clone, PartialEq, Eq)]
pub struct Rref<F> {
    pub rref: Matrix<F>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Right null space `{x : A x = 0}`.
    pub kernel: Subspace<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = F::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; `cols` is needed to type the empty matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Builds the matrix whose `c`-th column is `column(c)`.
    pub fn from_columns<I>(rows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<F>>,
    {
        let columns: Vec<Vec<F>> = columns.into_iter().collect();
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (c, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, v) in col.into_iter().enumerate() {
                m.entries[r * cols + c] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.entries[i * cols.len() + j] = self.get(r, c).clone();
            }
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, blocks: &[Matrix<F>]) -> Result<Self> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    fn zip_with(&self, rhs: &Matrix<F>, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Gauss–Jordan elimination in place; returns the pivot columns.
    /// Pivots are normalized to one and cleared above and below.
    fn reduce_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(found) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if found != r {
                for k in 0..cols {
                    self.entries.swap(found * cols + k, r * cols + k);
                }
            }
            let inv = self.get(r, c).inverse().expect("pivot is nonzero");
            for k in c..cols {
                let idx = r * cols + k;
                if !self.entries[idx].is_zero() {
                    self.entries[idx] = self.entries[idx].clone() * inv.clone();
                }
            }
            let pivot_row: Vec<(usize, F)> = (c..cols)
                .filter(|&k| !self.get(r, k).is_zero())
                .map(|k| (k, self.get(r, k).clone()))
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (k, v) in &pivot_row {
                    let idx = i * cols + k;
                    self.entries[idx] = self.entries[idx].clone() - factor.clone() * v.clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, rank, and canonical right kernel.
    pub fn rref_rank_kernel(&self) -> Rref<F> {
        let mut rref = self.clone();
        let pivot_cols = rref.reduce_in_place();
        let rank = pivot_cols.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let kernel_rows: Vec<Vec<F>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -rref.get(r, f).clone();
                }
                v
            })
            .collect();
        let kernel = Subspace::from_rows(self.cols, kernel_rows)
            .expect("kernel vectors have the ambient length");
        Rref {
            rref,
            rank,
            pivot_cols,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.reduce_in_place().len()
    }

    /// Right null space.
    pub fn kernel(&self) -> Subspace<F> {
        self.rref_rank_kernel().kernel
    }

    /// Span of the columns, as a subspace of `F^rows`.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_rows(self.rows, self.transpose().row_vectors())
            .expect("columns have the ambient length")
    }

    pub(crate) fn reduced_rows(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut work = self.clone();
        let pivots = work.reduce_in_place();
        let rows = (0..pivots.len()).map(|r| work.row(r).to_vec()).collect();
        (rows, pivots)
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.entries[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
