//! Horns, horn kernels, the Moore filler, and the horn complex.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::normalization::degenerate_subspace;
use crate::shape::{MultiIndex, Shape};
use crate::tensor::{face_matrix, Tensor};

/// A `(p, j)`-horn: faces `x_i` for every `i ∈ [p] \ {j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horn<F> {
    shape: Shape,
    p: usize,
    j: usize,
    faces: BTreeMap<usize, Tensor<F>>,
}

impl<F: Field> Horn<F> {
    /// Checks that the faces have the right shape, degree and index set.
    /// Compatibility is checked separately by [`Horn::check_compatible`].
    pub fn new(
        shape: Shape,
        p: usize,
        j: usize,
        faces: BTreeMap<usize, Tensor<F>>,
    ) -> Result<Self> {
        if p == 0 {
            return Err(Error::DegreeZero);
        }
        if j > p {
            return Err(Error::IndexOutOfRange {
                index: j,
                degree: p,
            });
        }
        let expected: Vec<usize> = (0..=p).filter(|&i| i != j).collect();
        let keys: Vec<usize> = faces.keys().copied().collect();
        if keys != expected {
            return Err(Error::Precondition(format!(
                "a ({p},{j})-horn needs faces {expected:?}, got {keys:?}"
            )));
        }
        for x in faces.values() {
            if x.shape() != &shape {
                return Err(Error::ShapeMismatch);
            }
            if x.degree() != p - 1 {
                return Err(Error::DegreeMismatch {
                    expected: p - 1,
                    found: x.degree(),
                });
            }
        }
        Ok(Horn { shape, p, j, faces })
    }

    pub fn zero(shape: &Shape, p: usize, j: usize) -> Result<Self> {
        let faces = (0..=p)
            .filter(|&i| i != j)
            .map(|i| (i, Tensor::zeros(shape, p - 1)))
            .collect();
        Horn::new(shape.clone(), p, j, faces)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn omitted(&self) -> usize {
        self.j
    }

    pub fn faces(&self) -> &BTreeMap<usize, Tensor<F>> {
        &self.faces
    }

    pub fn face(&self, i: usize) -> Option<&Tensor<F>> {
        self.faces.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.faces.values().all(Tensor::is_zero)
    }

    /// `d_i(x_ℓ) = d_{ℓ−1}(x_i)` for all `i < ℓ` in `[p] \ {j}`; reports the
    /// first violated pair in lexicographic order.
    pub fn check_compatible(&self) -> Result<()> {
        if self.p < 2 {
            return Ok(());
        }
        for (&i, xi) in &self.faces {
            for (&l, xl) in self.faces.range(i + 1..) {
                if xl.face(i)? != xi.face(l - 1)? {
                    return Err(Error::IncompatibleHorn { i, l });
                }
            }
        }
        Ok(())
    }
}

/// `M_{p,j} = {m ∈ I_p : im(m) ⊇ [p] \ {j}}` and the coordinate subspace
/// `R_{p,j}` they span.
pub fn missing_indices<F: Field>(
    shape: &Shape,
    p: usize,
    j: usize,
) -> Result<(Vec<MultiIndex>, Subspace<F>)> {
    let positions = missing_positions(shape, p, j)?;
    let set = shape.index_set(p);
    let indices = positions.iter().map(|&pos| set.at(pos)).collect();
    Ok((indices, Subspace::coordinate(set.len(), positions)))
}

/// Positions in `I_p` of the missing indices.
pub fn missing_positions(shape: &Shape, p: usize, j: usize) -> Result<Vec<usize>> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    if j > p {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: p,
        });
    }
    Ok(covering_positions(shape, p, (0..=p).filter(|&x| x != j)))
}

/// Positions of the `m ∈ I_p` whose coordinates take every value in `values`.
pub(crate) fn covering_positions(
    shape: &Shape,
    p: usize,
    values: impl IntoIterator<Item = usize>,
) -> Vec<usize> {
    let values: Vec<usize> = values.into_iter().collect();
    shape
        .index_set(p)
        .iter()
        .enumerate()
        .filter(|(_, m)| m.covers(values.iter().copied()))
        .map(|(pos, _)| pos)
        .collect()
}

/// `∩_{i≠j} ker d_i` by elimination on the stacked face matrices.
pub fn horn_kernel_by_elimination<F: Field>(
    shape: &Shape,
    p: usize,
    j: usize,
) -> Result<Subspace<F>> {
    Ok(horn_map_matrix::<F>(shape, p, j)?.kernel())
}

/// Matrix of `Φ_j : X_p → ⊕_{i≠j} X_{p−1}`, blocks in increasing `i`.
pub fn horn_map_matrix<F: Field>(shape: &Shape, p: usize, j: usize) -> Result<Matrix<F>> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    if j > p {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: p,
        });
    }
    let blocks = (0..=p)
        .filter(|&i| i != j)
        .map(|i| face_matrix::<F>(shape, p, i))
        .collect::<Result<Vec<_>>>()?;
    Matrix::vstack(shape.index_count(p), &blocks)
}

/// `Φ_j(t) = (d_i t)_{i≠j}`.
pub fn horn_restrict<F: Field>(t: &Tensor<F>, j: usize) -> Result<Horn<F>> {
    let p = t.degree();
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    if j > p {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: p,
        });
    }
    let faces = (0..=p)
        .filter(|&i| i != j)
        .map(|i| Ok((i, t.face(i)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Horn::new(t.shape().clone(), p, j, faces)
}

/// The Moore filler `μ_j(h)`: ascending over `i < j` with `s_i`, then
/// descending over `i > j` with `s_{i−1}`.
pub fn moore_filler<F: Field>(h: &Horn<F>) -> Result<Tensor<F>> {
    h.check_compatible()?;
    let (p, j) = (h.p, h.j);
    let mut t = Tensor::zeros(&h.shape, p);
    for i in 0..j {
        let gap = h.faces[&i].sub(&t.face(i)?)?;
        t = t.add(&gap.degeneracy(i)?)?;
    }
    for i in (j + 1..=p).rev() {
        let gap = h.faces[&i].sub(&t.face(i)?)?;
        t = t.add(&gap.degeneracy(i - 1)?)?;
    }
    Ok(t)
}

/// `t = r + μ_j(Φ_j(t))` with `r ∈ R_{p,j}`.
pub fn horn_decompose<F: Field>(t: &Tensor<F>, j: usize) -> Result<(Tensor<F>, Tensor<F>)> {
    let filler = moore_filler(&horn_restrict(t, j)?)?;
    Ok((t.sub(&filler)?, filler))
}

/// Whether `t − μ_j(Φ_j(t))` is supported on all of `M_{p,j}`.
///
/// Requires `k ≥ p`, i.e. a nonempty missing-index set.
pub fn genericity_test<F: Field>(t: &Tensor<F>, j: usize) -> Result<bool> {
    let p = t.degree();
    let missing = missing_positions(t.shape(), p, j)?;
    if missing.is_empty() {
        return Err(Error::Precondition(format!(
            "no missing indices for k = {} < p = {p}",
            t.shape().k()
        )));
    }
    let (r, _) = horn_decompose(t, j)?;
    Ok(r.support() == missing)
}

/// Homology of the horn complex `X_n → ⊕_{i≠j} X_{n−1} → ⊕_{i<m} X_{n−2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornComplexReport {
    pub j: usize,
    #[serde(rename = "dim_H2")]
    pub dim_h2: usize,
    #[serde(rename = "dim_H1")]
    pub dim_h1: usize,
    #[serde(rename = "rank_Phi")]
    pub rank_phi: usize,
    #[serde(rename = "dim_ker_Psi")]
    pub dim_ker_compat: usize,
    #[serde(rename = "dim_R")]
    pub dim_r: usize,
    pub pass: bool,
}

/// Matrix of `(x_i)_{i≠j} ↦ (d_i x_m − d_{m−1} x_i)_{i<m}` on horns of
/// degree `p`; its kernel is the space of compatible horns.
pub fn compatibility_map_matrix<F: Field>(shape: &Shape, p: usize, j: usize) -> Result<Matrix<F>> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "compatibility map needs p >= 2, got {p}"
        )));
    }
    let kept: Vec<usize> = (0..=p).filter(|&i| i != j).collect();
    let pairs: Vec<(usize, usize)> = kept
        .iter()
        .flat_map(|&i| kept.iter().filter(move |&&m| m > i).map(move |&m| (i, m)))
        .collect();
    let (src, dst) = (shape.index_count(p - 1), shape.index_count(p - 2));
    let block_of = |i: usize| kept.iter().position(|&x| x == i).expect("kept index");
    let mut out = Matrix::<F>::zeros(pairs.len() * dst, kept.len() * src);
    let mut accumulate = |row_block: usize, col_block: usize, m: &Matrix<F>, sign: F| {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if !num_traits::Zero::is_zero(v) {
                    let (rr, cc) = (row_block * dst + r, col_block * src + c);
                    let cur = out.get(rr, cc).clone();
                    out.set(rr, cc, cur + sign.clone() * v.clone());
                }
            }
        }
    };
    for (b, &(i, m)) in pairs.iter().enumerate() {
        accumulate(
            b,
            block_of(m),
            &face_matrix::<F>(shape, p - 1, i)?,
            F::one(),
        );
        accumulate(
            b,
            block_of(i),
            &face_matrix::<F>(shape, p - 1, m - 1)?,
            -F::one(),
        );
    }
    Ok(out)
}

/// Builds both maps of the horn complex in degree `n` and compares
/// `H_2 = ker Φ_j` with `R_{n,j}` and `H_1` with zero.
pub fn horn_complex_check<F: Field>(shape: &Shape, j: usize) -> Result<HornComplexReport> {
    let n = shape.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "the horn complex needs n >= 2, got n = {n}"
        )));
    }
    if j > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: n,
        });
    }
    let phi = horn_map_matrix::<F>(shape, n, j)?;
    let compat = compatibility_map_matrix::<F>(shape, n, j)?;
    if !compat.mul(&phi)?.is_zero() {
        return Err(Error::NotAComplex(
            "horn complex does not square to zero".into(),
        ));
    }
    let rank_phi = phi.rank();
    let dim_h2 = phi.cols() - rank_phi;
    let dim_ker_compat = compat.cols() - compat.rank();
    let dim_h1 = dim_ker_compat - rank_phi;
    let dim_r = missing_positions(shape, n, j)?.len();
    Ok(HornComplexReport {
        j,
        dim_h2,
        dim_h1,
        rank_phi,
        dim_ker_compat,
        dim_r,
        pass: dim_h1 == 0 && dim_h2 == dim_r,
    })
}

/// Structural facts about one horn configuration `(p, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornStructureReport {
    pub p: usize,
    pub j: usize,
    pub dim_r: usize,
    pub dim_d: usize,
    pub meet_r_d: usize,
    /// `R_{p,j}` from missing indices equals the elimination kernel.
    pub kernel_matches: bool,
    pub pass: bool,
}

/// Compares the missing-index basis with the elimination kernel and checks
/// `R_{p,j} ∩ D_p = 0`.
pub fn horn_structure_check<F: Field>(
    shape: &Shape,
    p: usize,
    j: usize,
) -> Result<HornStructureReport> {
    let (_, r) = missing_indices::<F>(shape, p, j)?;
    let by_elim = horn_kernel_by_elimination::<F>(shape, p, j)?;
    let d = degenerate_subspace::<F>(shape, p);
    let meet = r.meet(&d)?;
    let kernel_matches = r == by_elim;
    Ok(HornStructureReport {
        p,
        j,
        dim_r: r.dim(),
        dim_d: d.dim(),
        meet_r_d: meet.dim(),
        kernel_matches,
        pass: kernel_matches && meet.is_zero(),
    })
}

/// `d_ℓ` restricted to `span{E_m : ℓ ∉ im(m)}` is a bijection onto
/// `X_{p−1}`; returns whether that matrix is square and invertible.
pub fn ell_free_isomorphism<F: Field>(shape: &Shape, p: usize, l: usize) -> Result<bool> {
    let fm = face_matrix::<F>(shape, p, l)?;
    let set = shape.index_set(p);
    let cols: Vec<usize> = set
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.contains_value(l))
        .map(|(pos, _)| pos)
        .collect();
    let rows: Vec<usize> = (0..fm.rows()).collect();
    let sub = fm.submatrix(&rows, &cols);
    Ok(sub.rows() == sub.cols() && sub.rank() == sub.rows())
}

/// `dim R_{n,j} = dim Z_n + dim d_j(R_{n,j})`, returned as the three numbers.
pub fn short_exact_dims<F: Field>(shape: &Shape, j: usize) -> Result<(usize, usize, usize)> {
    let n = shape.n();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let (_, r) = missing_indices::<F>(shape, n, j)?;
    let z = covering_positions(shape, n, 0..=n).len();
    let image = r.image(&face_matrix::<F>(shape, n, j)?)?;
    Ok((r.dim(), z, image.dim()))
}
