//! The shift-and-truncate homotopy `H` and the shifted depth filtration.

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{chain_betti, induced_boundaries, Matrix, Subspace};
use crate::shape::{AxisPermutation, MultiIndex, Shape};
use crate::tensor::{alternating_subspace, boundary_matrix, symmetric_subspace, Tensor};

/// `H(T)(m) = T(m − 1̄)` when every `m_a ≥ 1`, else `0`.
pub fn homotopy_apply<F: Field>(t: &Tensor<F>) -> Tensor<F> {
    let p = t.degree();
    let source = t.shape().index_set(p);
    Tensor::from_fn(t.shape(), p + 1, |m| {
        if m.coords().contains(&0) {
            return F::zero();
        }
        let shifted: Vec<usize> = m.coords().iter().map(|x| x - 1).collect();
        t.coeffs()[source.position(&shifted).expect("m − 1 lies in I_p")].clone()
    })
}

/// Matrix of `H_p : X_p → X_{p+1}`.
pub fn homotopy_matrix<F: Field>(shape: &Shape, p: usize) -> Matrix<F> {
    let source = shape.index_set(p);
    let target = shape.index_set(p + 1);
    let mut h = Matrix::zeros(target.len(), source.len());
    for (row, m) in target.iter().enumerate() {
        if m.coords().contains(&0) {
            continue;
        }
        let shifted: Vec<usize> = m.coords().iter().map(|x| x - 1).collect();
        h.set(
            row,
            source.position(&shifted).expect("m − 1 lies in I_p"),
            F::one(),
        );
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub shape: Vec<usize>,
    pub p_max: usize,
    /// Degrees where `∂H + H∂ = id` was checked, with the outcome.
    pub degrees: Vec<(usize, bool)>,
    /// First failing `(degree, basis index)`, if any.
    pub first_failure: Option<(usize, Vec<usize>)>,
    pub pass: bool,
}

/// `∂_{p+1} H_p + H_{p−1} ∂_p = id` on `X_p` for `0 ≤ p ≤ p_max`.
pub fn contraction_check<F: Field>(shape: &Shape, p_max: usize) -> Result<ContractionReport> {
    let mut degrees = Vec::new();
    let mut first_failure = None;
    for p in 0..=p_max {
        let lhs = contraction_operator::<F>(shape, p)?;
        let id = Matrix::identity(shape.index_count(p));
        let ok = lhs == id;
        if !ok && first_failure.is_none() {
            let col = (0..lhs.cols())
                .find(|&c| lhs.column(c) != id.column(c))
                .expect("matrices differ in some column");
            first_failure = Some((p, shape.index_set(p).at(col).0));
        }
        degrees.push((p, ok));
    }
    Ok(ContractionReport {
        shape: shape.entries().to_vec(),
        p_max,
        pass: first_failure.is_none(),
        degrees,
        first_failure,
    })
}

/// `∂_{p+1} H_p + H_{p−1} ∂_p` as a matrix on `X_p`.
pub fn contraction_operator<F: Field>(shape: &Shape, p: usize) -> Result<Matrix<F>> {
    let up = boundary_matrix::<F>(shape, p + 1).mul(&homotopy_matrix(shape, p))?;
    if p == 0 {
        return Ok(up);
    }
    let down = homotopy_matrix::<F>(shape, p - 1).mul(&boundary_matrix(shape, p))?;
    up.add(&down)
}

/// Position in the shifted depth filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiltrationLevel {
    Level(i64),
    /// The zero tensor, which lies in every `F^t`.
    Bottomless,
}

impl FiltrationLevel {
    /// Whether a tensor at this level lies in `F^t`.
    pub fn within(self, t: i64) -> bool {
        match self {
            FiltrationLevel::Level(l) => l >= t,
            FiltrationLevel::Bottomless => true,
        }
    }
}

impl fmt::Display for FiltrationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLevel::Level(l) => write!(f, "{l}"),
            FiltrationLevel::Bottomless => write!(f, "bottomless"),
        }
    }
}

impl Serialize for FiltrationLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FiltrationLevel::Level(l) => s.serialize_i64(*l),
            FiltrationLevel::Bottomless => s.serialize_str("bottomless"),
        }
    }
}

fn index_level(m: &MultiIndex, p: usize) -> i64 {
    m.min() as i64 - p as i64
}

/// Largest `t` with `T ∈ F^t X_p`: the minimum of `min(m) − p` over the support.
pub fn filtration_level<F: Field>(t: &Tensor<F>) -> FiltrationLevel {
    t.support_indices()
        .iter()
        .map(|m| index_level(m, t.degree()))
        .min()
        .map_or(FiltrationLevel::Bottomless, FiltrationLevel::Level)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub level: i64,
    /// `dim gr^t X_p` for `0 ≤ p ≤ p_max`.
    pub dims: Vec<usize>,
    pub identity_holds: bool,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedCollapseReport {
    pub shape: Vec<usize>,
    pub p_max: usize,
    /// Faces, `∂` and `H` never lower the level of a basis tensor.
    pub filtration_preserved: bool,
    /// `F^t X_p = 0` for `t + p > min_a M_a(p)` and `F^{−p} X_p = X_p`.
    pub bounds_hold: bool,
    pub pieces: Vec<GradedPiece>,
    pub pass: bool,
}

/// Checks that `∂` and `H` respect the shifted depth filtration and that
/// every graded piece is contractible through `p_max`.
pub fn graded_collapse_check<F: Field>(
    shape: &Shape,
    p_max: usize,
) -> Result<GradedCollapseReport> {
    if p_max == 0 {
        return Err(Error::Precondition("p_max must be at least 1".into()));
    }
    let levels: Vec<Vec<i64>> = (0..=p_max + 1)
        .map(|p| {
            shape
                .index_set(p)
                .iter()
                .map(|m| index_level(&m, p))
                .collect()
        })
        .collect();

    let mut filtration_preserved = true;
    let mut bounds_hold = true;
    for p in 0..=p_max {
        let min_bound = shape.bounds(p).into_iter().min().expect("k >= 1") as i64;
        for (pos, &lvl) in levels[p].iter().enumerate() {
            bounds_hold &= lvl >= -(p as i64) && lvl + p as i64 <= min_bound;
            let e = Tensor::<F>::basis_at(shape, p, pos);
            filtration_preserved &= filtration_level(&homotopy_apply(&e)).within(lvl);
            if p > 0 {
                for i in 0..=p {
                    filtration_preserved &= filtration_level(&e.face(i)?).within(lvl);
                }
            }
        }
    }

    let boundaries: Vec<Matrix<F>> = (0..=p_max + 1).map(|p| boundary_matrix(shape, p)).collect();
    let homotopies: Vec<Matrix<F>> = (0..=p_max).map(|p| homotopy_matrix(shape, p)).collect();
    let lo = -(p_max as i64 + 1);
    let hi = levels.iter().flatten().copied().max().unwrap_or(0);
    let mut pieces = Vec::new();
    for level in lo..=hi {
        let coords: Vec<Vec<usize>> = levels
            .iter()
            .map(|ls| (0..ls.len()).filter(|&i| ls[i] == level).collect())
            .collect();
        if coords[..=p_max].iter().all(Vec::is_empty) {
            continue;
        }
        let sub = |m: &Matrix<F>, rows: &[usize], cols: &[usize]| m.submatrix(rows, cols);
        let mut identity_holds = true;
        for p in 0..=p_max {
            let c = &coords[p];
            let mut op = sub(&boundaries[p + 1], c, &coords[p + 1]).mul(&sub(
                &homotopies[p],
                &coords[p + 1],
                c,
            ))?;
            if p > 0 {
                let down = sub(&homotopies[p - 1], c, &coords[p - 1]).mul(&sub(
                    &boundaries[p],
                    &coords[p - 1],
                    c,
                ))?;
                op = op.add(&down)?;
            }
            identity_holds &= op == Matrix::identity(c.len());
        }
        let graded: Vec<Matrix<F>> = (0..=p_max + 1)
            .map(|p| {
                if p == 0 {
                    Matrix::zeros(0, coords[0].len())
                } else {
                    sub(&boundaries[p], &coords[p - 1], &coords[p])
                }
            })
            .collect();
        let betti = chain_betti(&graded, p_max)?.values;
        pieces.push(GradedPiece {
            level,
            dims: coords[..=p_max].iter().map(Vec::len).collect(),
            identity_holds,
            betti,
        });
    }
    let pass = filtration_preserved
        && bounds_hold
        && pieces
            .iter()
            .all(|g| g.identity_holds && g.betti.iter().all(Zero::is_zero));
    Ok(GradedCollapseReport {
        shape: shape.entries().to_vec(),
        p_max,
        filtration_preserved,
        bounds_hold,
        pieces,
        pass,
    })
}

/// Draws `σ ∈ Stab(s)` as a random word in the block transpositions.
pub fn random_stabilizer_element<R: Rng + ?Sized>(shape: &Shape, rng: &mut R) -> AxisPermutation {
    let gens = shape.stabilizer_generators();
    let mut sigma = AxisPermutation::identity(shape.k());
    if gens.is_empty() {
        return sigma;
    }
    for _ in 0..2 * shape.k() {
        sigma = gens[rng.gen_range(0..gens.len())].compose(&sigma);
    }
    sigma
}

/// `H(σ·t) = σ·H(t)` on `samples` random tensors of random degree `≤ p_max`.
pub fn equivariance_check<F: Field, R: Rng + ?Sized>(
    shape: &Shape,
    p_max: usize,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    for _ in 0..samples {
        let p = rng.gen_range(0..=p_max);
        let t = Tensor::<F>::random(shape, p, rng);
        let sigma = random_stabilizer_element(shape, rng);
        let lhs = homotopy_apply(&t.permute_axes(&sigma)?);
        let rhs = homotopy_apply(&t).permute_axes(&sigma)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSubcomplexReport {
    pub kind: &'static str,
    pub dims: Vec<usize>,
    /// `H` maps the subspace in degree `p` into the one in degree `p + 1`.
    pub homotopy_preserves: bool,
    /// Betti numbers for `0 ≤ p ≤ p_max`; the top one is only a bound.
    pub betti: Vec<usize>,
    pub pass: bool,
}

fn invariant_subcomplex<F: Field>(
    shape: &Shape,
    p_max: usize,
    kind: &'static str,
    subspace: impl Fn(&Shape, usize) -> Subspace<F>,
) -> Result<InvariantSubcomplexReport> {
    let subs: Vec<Subspace<F>> = (0..=p_max + 1).map(|p| subspace(shape, p)).collect();
    let mut homotopy_preserves = true;
    for p in 0..=p_max {
        let h = homotopy_matrix::<F>(shape, p);
        homotopy_preserves &= subs[p].image(&h)?.is_subspace_of(&subs[p + 1])?;
    }
    let ambient: Vec<Matrix<F>> = (0..=p_max).map(|p| boundary_matrix(shape, p)).collect();
    let induced = induced_boundaries(&subs[..=p_max], &ambient)?;
    let betti = chain_betti(&induced, p_max)?.values;
    let pass = homotopy_preserves && betti[..p_max].iter().all(Zero::is_zero);
    Ok(InvariantSubcomplexReport {
        kind,
        dims: subs[..=p_max].iter().map(Subspace::dim).collect(),
        homotopy_preserves,
        betti,
        pass,
    })
}

/// The `Stab(s)`-symmetric and alternating subcomplexes; both should be
/// acyclic through `p_max − 1`.
pub fn invariant_subcomplex_checks<F: Field>(
    shape: &Shape,
    p_max: usize,
) -> Result<Vec<InvariantSubcomplexReport>> {
    Ok(vec![
        invariant_subcomplex(shape, p_max, "symmetric", symmetric_subspace::<F>)?,
        invariant_subcomplex(shape, p_max, "alternating", alternating_subspace::<F>)?,
    ])
}
