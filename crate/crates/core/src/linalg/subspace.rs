use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A linear subspace of `F^ambient_dim`, stored by its reduced row echelon
/// basis. The representation is canonical, so derived equality is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<Vec<F>>,
    pivot_cols: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, 0..ambient_dim)
    }

    /// Span of the standard basis vectors `e_i` for `i` in `indices`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx
            .iter()
            .map(|&i| {
                let mut v = vec![F::zero(); ambient_dim];
                v[i] = F::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivot_cols: idx,
        }
    }

    /// Span of arbitrary vectors.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let m = Matrix::from_rows(ambient_dim, rows)?;
        let (basis, pivot_cols) = m.reduced_rows();
        Ok(Subspace {
            ambient_dim,
            basis,
            pivot_cols,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// The basis as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.ambient_dim, self.basis.clone()).expect("basis rows are well formed")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[F]) -> Result<Vec<F>> {
        self.check_len(v.len())?;
        let mut rem = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivot_cols) {
            let c = rem[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in rem.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.clone() - c.clone() * b.clone();
                }
            }
        }
        Ok(rem)
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of `v` in the echelon basis, `None` when `v` is outside.
    /// Because the basis is reduced, these are just the pivot entries of `v`.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.pivot_cols.iter().map(|&c| v[c].clone()).collect(),
        ))
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_len(other.ambient_dim)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn join(&self, other: &Subspace<F>) -> Result<Self> {
        self.check_len(other.ambient_dim)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_rows(self.ambient_dim, rows)
    }

    /// Intersection and sum, by the Zassenhaus algorithm.
    pub fn meet_join(&self, other: &Subspace<F>) -> Result<(Self, Self)> {
        self.check_len(other.ambient_dim)?;
        let d = self.ambient_dim;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.basis {
            let mut r = a.clone();
            r.extend(a.iter().cloned());
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = b.clone();
            r.extend(std::iter::repeat_n(F::zero(), d));
            rows.push(r);
        }
        let (reduced, _) = Matrix::from_rows(2 * d, rows)?.reduced_rows();
        let mut join_rows = Vec::new();
        let mut meet_rows = Vec::new();
        for r in reduced {
            let (left, right) = r.split_at(d);
            if left.iter().all(Zero::is_zero) {
                meet_rows.push(right.to_vec());
            } else {
                join_rows.push(left.to_vec());
            }
        }
        Ok((
            Self::from_rows(d, meet_rows)?,
            Self::from_rows(d, join_rows)?,
        ))
    }

    pub fn meet(&self, other: &Subspace<F>) -> Result<Self> {
        Ok(self.meet_join(other)?.0)
    }

    /// Image of the subspace under the linear map `m` (acting on columns).
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        self.check_len(m.cols())?;
        let rows = self
            .basis
            .iter()
            .map(|b| m.mul_vec(b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(m.rows(), rows)
    }

    /// Matrix of `m` restricted to `self` and corestricted to `target`, in
    /// the echelon bases of both. Fails unless `m(self) ⊆ target`.
    pub fn restricted_map(&self, m: &Matrix<F>, target: &Subspace<F>) -> Result<Matrix<F>> {
        self.check_len(m.cols())?;
        target.check_len(m.rows())?;
        let mut columns = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = m.mul_vec(b)?;
            match target.coordinates(&img)? {
                Some(c) => columns.push(c),
                None => {
                    return Err(Error::CheckFailed(
                        "map does not send the subspace into the target".into(),
                    ))
                }
            }
        }
        Matrix::from_columns(target.dim(), columns)
    }
}
