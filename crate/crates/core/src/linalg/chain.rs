use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// Betti numbers of a finite window of a chain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    /// `values[p] = dim ker ∂_p − dim im ∂_{p+1}` for `0 ≤ p ≤ p_max`.
    pub values: Vec<usize>,
    /// Whether `∂_{p_max+1}` was supplied. When it was not, the top value is
    /// `dim ker ∂_{p_max}` and only a bound for the true homology.
    pub top_boundary_supplied: bool,
}

/// Betti numbers of the complex `C_{p_max} → … → C_0 → 0`.
///
/// `boundaries[p]` is the matrix of `∂_p : C_p → C_{p−1}` (rows index
/// `C_{p−1}`); `boundaries[0]` must be the zero map and is usually `0 × dim C_0`.
/// Supplying one extra matrix `boundaries[p_max + 1]` makes the top value
/// exact. Composability and `∂∘∂ = 0` are checked.
pub fn chain_betti<F: Field>(boundaries: &[Matrix<F>], p_max: usize) -> Result<BettiNumbers> {
    if boundaries.len() < p_max + 1 || boundaries.len() > p_max + 2 {
        return Err(Error::NotAComplex(format!(
            "expected {} or {} boundary matrices, got {}",
            p_max + 1,
            p_max + 2,
            boundaries.len()
        )));
    }
    if !boundaries[0].is_zero() {
        return Err(Error::NotAComplex("∂_0 must be zero".into()));
    }
    for p in 0..boundaries.len() - 1 {
        let (lower, upper) = (&boundaries[p], &boundaries[p + 1]);
        if upper.rows() != lower.cols() {
            return Err(Error::NotAComplex(format!(
                "∂_{} has {} rows but C_{} has dimension {}",
                p + 1,
                upper.rows(),
                p,
                lower.cols()
            )));
        }
        if p >= 1 && !lower.mul(upper)?.is_zero() {
            return Err(Error::NotAComplex(format!("∂_{p} ∘ ∂_{} ≠ 0", p + 1)));
        }
    }
    let ranks: Vec<usize> = boundaries.iter().map(Matrix::rank).collect();
    let values = (0..=p_max)
        .map(|p| {
            let kernel = boundaries[p].cols() - ranks[p];
            let image = ranks.get(p + 1).copied().unwrap_or(0);
            kernel - image
        })
        .collect();
    Ok(BettiNumbers {
        values,
        top_boundary_supplied: boundaries.len() == p_max + 2,
    })
}

/// Boundary matrices of the subcomplex spanned by `subspaces`, expressed in
/// their echelon bases. `ambient[p]` is `∂_p` of the ambient complex. Fails
/// if some `∂_p` does not map `subspaces[p]` into `subspaces[p−1]`.
pub fn induced_boundaries<F: Field>(
    subspaces: &[Subspace<F>],
    ambient: &[Matrix<F>],
) -> Result<Vec<Matrix<F>>> {
    if subspaces.len() != ambient.len() {
        return Err(Error::DimensionMismatch {
            expected: subspaces.len(),
            found: ambient.len(),
        });
    }
    let mut out = Vec::with_capacity(subspaces.len());
    out.push(Matrix::zeros(0, subspaces.first().map_or(0, Subspace::dim)));
    for p in 1..subspaces.len() {
        out.push(subspaces[p].restricted_map(&ambient[p], &subspaces[p - 1])?);
    }
    Ok(out)
}

/// Boundary matrices of the quotient of a complex by a coordinate
/// subcomplex. `removed[p]` lists the coordinates of `C_p` spanning the
/// subcomplex; the quotient keeps the others.
pub fn coordinate_quotient<F: Field>(
    ambient: &[Matrix<F>],
    removed: &[Vec<usize>],
) -> Result<Vec<Matrix<F>>> {
    if ambient.len() != removed.len() {
        return Err(Error::DimensionMismatch {
            expected: ambient.len(),
            found: removed.len(),
        });
    }
    let kept: Vec<Vec<usize>> = ambient
        .iter()
        .zip(removed)
        .map(|(m, r)| (0..m.cols()).filter(|c| !r.contains(c)).collect())
        .collect();
    let mut out = Vec::with_capacity(ambient.len());
    out.push(Matrix::zeros(0, kept[0].len()));
    for p in 1..ambient.len() {
        // the subcomplex must be closed under ∂
        for &c in &removed[p] {
            for &r in &kept[p - 1] {
                if !num_traits::Zero::is_zero(ambient[p].get(r, c)) {
                    return Err(Error::NotAComplex(format!(
                        "coordinate subspace in degree {p} is not a subcomplex"
                    )));
                }
            }
        }
        out.push(ambient[p].submatrix(&kept[p - 1], &kept[p]));
    }
    Ok(out)
}
