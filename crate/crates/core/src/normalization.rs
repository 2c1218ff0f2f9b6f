//! Normalized, degenerate and normalized-cycle pieces of `X_•`.
//!
//! The normalized complex uses the convention `N_p = ∩_{i≥1} ker d_i` with
//! differential `d_0`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::horn::covering_positions;
use crate::linalg::{chain_betti, coordinate_quotient, Subspace};
use crate::shape::Shape;
use crate::tensor::{boundary_matrices, degeneracy_matrix, Tensor};

/// The Eilenberg–Mac Lane projection onto `N_p` along `D_p`.
///
/// The factors `id − s_{i−1} d_i` are applied for `i = p, p−1, …, 1`.
pub fn em_project<F: Field>(t: &Tensor<F>) -> Result<Tensor<F>> {
    let mut x = t.clone();
    for i in (1..=t.degree()).rev() {
        let correction = x.face(i)?.degeneracy(i - 1)?;
        x = x.sub(&correction)?;
    }
    Ok(x)
}

/// `N_p = span{E_m : im(m) ⊇ {1, …, p}}`.
pub fn normalized_subspace<F: Field>(shape: &Shape, p: usize) -> Subspace<F> {
    Subspace::coordinate(shape.index_count(p), covering_positions(shape, p, 1..=p))
}

/// `Z_p(N_•) = span{E_m : im(m) ⊇ [p]}`.
pub fn cycle_positions(shape: &Shape, p: usize) -> Vec<usize> {
    covering_positions(shape, p, 0..=p)
}

pub fn cycle_subspace<F: Field>(shape: &Shape, p: usize) -> Subspace<F> {
    Subspace::coordinate(shape.index_count(p), cycle_positions(shape, p))
}

/// `D_p = Σ_r im(s_r : X_{p−1} → X_p)`; zero in degree 0.
pub fn degenerate_subspace<F: Field>(shape: &Shape, p: usize) -> Subspace<F> {
    let dim = shape.index_count(p);
    if p == 0 {
        return Subspace::zero(dim);
    }
    let rows = (0..p)
        .flat_map(|r| {
            degeneracy_matrix::<F>(shape, p - 1, r)
                .expect("r < p")
                .transpose()
                .row_vectors()
        })
        .collect();
    Subspace::from_rows(dim, rows).expect("columns of the degeneracy maps live in X_p")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBases<F> {
    pub normalized: Subspace<F>,
    pub degenerate: Subspace<F>,
    pub cycles: Subspace<F>,
}

pub fn canonical_bases<F: Field>(shape: &Shape, p: usize) -> CanonicalBases<F> {
    CanonicalBases {
        normalized: normalized_subspace(shape, p),
        degenerate: degenerate_subspace(shape, p),
        cycles: cycle_subspace(shape, p),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EzReport {
    pub p: usize,
    pub dim_x: usize,
    /// `(q, C(p, p−q), dim N_q)` for `0 ≤ q ≤ p`.
    pub summands: Vec<(usize, String, usize)>,
    pub summand_total: String,
    pub dim_n: usize,
    pub dim_d: usize,
    pub meet_n_d: usize,
    pub pass: bool,
}

/// Eilenberg–Zilber count `dim X_p = Σ_q C(p, p−q) dim N_q`, plus
/// `N_p ⊕ D_p = X_p`.
pub fn ez_check<F: Field>(shape: &Shape, p: usize) -> Result<EzReport> {
    let dim_x = shape.index_count(p);
    let mut total = BigUint::from(0u32);
    let mut summands = Vec::with_capacity(p + 1);
    for q in 0..=p {
        let c = binomial(p, p - q);
        let n_q = covering_positions(shape, q, 1..=q).len();
        total += &c * BigUint::from(n_q);
        summands.push((q, c.to_string(), n_q));
    }
    let bases = canonical_bases::<F>(shape, p);
    let meet = bases.normalized.meet(&bases.degenerate)?;
    let (dim_n, dim_d) = (bases.normalized.dim(), bases.degenerate.dim());
    Ok(EzReport {
        p,
        dim_x,
        pass: total == BigUint::from(dim_x) && meet.is_zero() && dim_n + dim_d == dim_x,
        summands,
        summand_total: total.to_string(),
        dim_n,
        dim_d,
        meet_n_d: meet.dim(),
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientHomologyRow {
    pub r: usize,
    pub dim_h: usize,
    pub dim_z_prev: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientHomologyReport {
    pub p_max: usize,
    /// `∂` vanishes on every `Z_r`, `r ≤ p_max`.
    pub cycles_closed: bool,
    pub rows: Vec<QuotientHomologyRow>,
    pub pass: bool,
}

/// Betti numbers of `X_•/Z_•(N_•)` compared with `dim Z_{r−1}` for
/// `1 ≤ r ≤ p_max − 1`.
pub fn quotient_homology_check<F: Field>(
    shape: &Shape,
    p_max: usize,
) -> Result<QuotientHomologyReport> {
    if p_max == 0 {
        return Err(crate::Error::Precondition(
            "p_max must be at least 1".into(),
        ));
    }
    let ambient = boundary_matrices::<F>(shape, p_max, false);
    let removed: Vec<Vec<usize>> = (0..=p_max).map(|p| cycle_positions(shape, p)).collect();
    let cycles_closed = (1..=p_max).all(|p| {
        removed[p]
            .iter()
            .all(|&c| ambient[p].column(c).iter().all(num_traits::Zero::is_zero))
    });
    let quotient = coordinate_quotient(&ambient, &removed)?;
    let betti = chain_betti(&quotient, p_max)?;
    let rows: Vec<QuotientHomologyRow> = (1..p_max)
        .map(|r| {
            let dim_z_prev = removed[r - 1].len();
            QuotientHomologyRow {
                r,
                dim_h: betti.values[r],
                dim_z_prev,
                ok: betti.values[r] == dim_z_prev,
            }
        })
        .collect();
    Ok(QuotientHomologyReport {
        p_max,
        cycles_closed,
        pass: cycles_closed && rows.iter().all(|r| r.ok),
        rows,
    })
}
