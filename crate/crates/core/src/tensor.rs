//! Degree-`p` tensors `T : I_p → F` and the simplicial operators on them.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::shape::{codegeneracy, coface, AxisPermutation, MultiIndex, Shape};

/// A dense element of `X_p(s; F)`, coefficients listed over `I_p` in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<F> {
    shape: Shape,
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> Tensor<F> {
    pub fn new(shape: Shape, degree: usize, coeffs: Vec<F>) -> Result<Self> {
        let expected = shape.index_count(degree);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Tensor {
            shape,
            degree,
            coeffs,
        })
    }

    pub fn zeros(shape: &Shape, degree: usize) -> Self {
        Tensor {
            shape: shape.clone(),
            degree,
            coeffs: vec![F::zero(); shape.index_count(degree)],
        }
    }

    /// The unit tensor `E_m`.
    pub fn basis(shape: &Shape, degree: usize, m: &MultiIndex) -> Result<Self> {
        let pos = shape.index_set(degree).check(m)?;
        let mut t = Self::zeros(shape, degree);
        t.coeffs[pos] = F::one();
        Ok(t)
    }

    pub fn basis_at(shape: &Shape, degree: usize, pos: usize) -> Self {
        let mut t = Self::zeros(shape, degree);
        t.coeffs[pos] = F::one();
        t
    }

    pub fn random<R: Rng + ?Sized>(shape: &Shape, degree: usize, rng: &mut R) -> Self {
        let coeffs = (0..shape.index_count(degree))
            .map(|_| F::sample(rng))
            .collect();
        Tensor {
            shape: shape.clone(),
            degree,
            coeffs,
        }
    }

    /// Builds a tensor from a coefficient function on `I_p`.
    pub fn from_fn(shape: &Shape, degree: usize, mut f: impl FnMut(&MultiIndex) -> F) -> Self {
        let coeffs = shape.index_set(degree).iter().map(|m| f(&m)).collect();
        Tensor {
            shape: shape.clone(),
            degree,
            coeffs,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn get(&self, m: &MultiIndex) -> Result<&F> {
        let pos = self.shape.index_set(self.degree).check(m)?;
        Ok(&self.coeffs[pos])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Positions of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    pub fn support_indices(&self) -> Vec<MultiIndex> {
        let set = self.shape.index_set(self.degree);
        self.support().into_iter().map(|pos| set.at(pos)).collect()
    }

    fn check_compatible(&self, other: &Tensor<F>) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor<F>) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Tensor<F>) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    fn zip(&self, other: &Tensor<F>, f: impl Fn(&F, &F) -> F) -> Self {
        Tensor {
            shape: self.shape.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Tensor {
            shape: self.shape.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Coefficientwise image under a ring map `F → G`.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Tensor<G> {
        Tensor {
            shape: self.shape.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.degree {
            return Err(Error::IndexOutOfRange {
                index: i,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// `d_i T = T ∘ Δ_i`.
    pub fn face(&self, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        self.check_index(i)?;
        let src = index_pullback(&self.shape, self.degree - 1, self.degree, |x| coface(i, x));
        Ok(self.gather(self.degree - 1, &src))
    }

    /// `s_i T = T ∘ Σ_i`.
    pub fn degeneracy(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let src = index_pullback(&self.shape, self.degree + 1, self.degree, |x| {
            codegeneracy(i, x)
        });
        Ok(self.gather(self.degree + 1, &src))
    }

    fn gather(&self, degree: usize, src: &[usize]) -> Self {
        Tensor {
            shape: self.shape.clone(),
            degree,
            coeffs: src.iter().map(|&s| self.coeffs[s].clone()).collect(),
        }
    }

    /// `∂ = Σ (−1)^i d_i`. Undefined in degree 0, where the target would be
    /// `X_{−1} = 0`.
    pub fn boundary(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mut acc = Self::zeros(&self.shape, self.degree - 1);
        for i in 0..=self.degree {
            let f = self.face(i)?;
            acc = if i % 2 == 0 {
                acc.add(&f)?
            } else {
                acc.sub(&f)?
            };
        }
        Ok(acc)
    }

    /// `(σ·T)(m) = T(σ⁻¹·m)` for `σ ∈ Stab(s)`.
    pub fn permute_axes(&self, sigma: &AxisPermutation) -> Result<Self> {
        if !self.shape.stabilizes(sigma) {
            return Err(Error::NotInStabilizer(sigma.images().to_vec()));
        }
        let set = self.shape.index_set(self.degree);
        let mut out = vec![F::zero(); self.coeffs.len()];
        for (pos, c) in self.coeffs.iter().enumerate() {
            let target = sigma.act(set.at(pos).coords());
            out[set.position(&target).expect("stabilizer preserves I_p")] = c.clone();
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            degree: self.degree,
            coeffs: out,
        })
    }
}

/// For each `m ∈ I_to`, the position in `I_from` of `f` applied
/// coordinatewise to `m`.
fn index_pullback(shape: &Shape, to: usize, from: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    let target = shape.index_set(from);
    shape
        .index_set(to)
        .iter()
        .map(|m| {
            let image: Vec<usize> = m.coords().iter().map(|&x| f(x)).collect();
            target
                .position(&image)
                .expect("structure maps preserve the index sets")
        })
        .collect()
}

fn selection_matrix<F: Field>(rows: usize, cols: usize, src: &[usize]) -> Matrix<F> {
    let mut m = Matrix::zeros(rows, cols);
    for (r, &c) in src.iter().enumerate() {
        m.set(r, c, F::one());
    }
    m
}

/// Matrix of `d_i : X_p → X_{p−1}`.
pub fn face_matrix<F: Field>(shape: &Shape, p: usize, i: usize) -> Result<Matrix<F>> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    if i > p {
        return Err(Error::IndexOutOfRange {
            index: i,
            degree: p,
        });
    }
    let src = index_pullback(shape, p - 1, p, |x| coface(i, x));
    Ok(selection_matrix(src.len(), shape.index_count(p), &src))
}

/// Matrix of `s_i : X_p → X_{p+1}`.
pub fn degeneracy_matrix<F: Field>(shape: &Shape, p: usize, i: usize) -> Result<Matrix<F>> {
    if i > p {
        return Err(Error::IndexOutOfRange {
            index: i,
            degree: p,
        });
    }
    let src = index_pullback(shape, p + 1, p, |x| codegeneracy(i, x));
    Ok(selection_matrix(src.len(), shape.index_count(p), &src))
}

/// Matrix of `∂_p`; for `p = 0` the zero map onto the zero space.
pub fn boundary_matrix<F: Field>(shape: &Shape, p: usize) -> Matrix<F> {
    let cols = shape.index_count(p);
    if p == 0 {
        return Matrix::zeros(0, cols);
    }
    let mut m = Matrix::<F>::zeros(shape.index_count(p - 1), cols);
    for i in 0..=p {
        let src = index_pullback(shape, p - 1, p, |x| coface(i, x));
        let sign = if i % 2 == 0 { F::one() } else { -F::one() };
        for (r, &c) in src.iter().enumerate() {
            let v = m.get(r, c).clone() + sign.clone();
            m.set(r, c, v);
        }
    }
    m
}

/// `∂_0, …, ∂_{p_max}`, plus `∂_{p_max+1}` when `with_top` is set.
pub fn boundary_matrices<F: Field>(shape: &Shape, p_max: usize, with_top: bool) -> Vec<Matrix<F>> {
    let top = if with_top { p_max + 1 } else { p_max };
    (0..=top).map(|p| boundary_matrix(shape, p)).collect()
}

/// Matrix of `T ↦ σ·T` on `X_p`.
pub fn permutation_matrix<F: Field>(
    shape: &Shape,
    p: usize,
    sigma: &AxisPermutation,
) -> Result<Matrix<F>> {
    if !shape.stabilizes(sigma) {
        return Err(Error::NotInStabilizer(sigma.images().to_vec()));
    }
    let set = shape.index_set(p);
    let mut m = Matrix::zeros(set.len(), set.len());
    for (pos, idx) in set.iter().enumerate() {
        let target = set
            .position(&sigma.act(idx.coords()))
            .expect("stabilizer preserves I_p");
        m.set(target, pos, F::one());
    }
    Ok(m)
}

fn fixed_subspace<F: Field>(shape: &Shape, p: usize, sign: F) -> Subspace<F> {
    let n = shape.index_count(p);
    let gens = shape.stabilizer_generators();
    if gens.is_empty() {
        return Subspace::full(n);
    }
    let blocks: Vec<Matrix<F>> = gens
        .iter()
        .map(|g| {
            let pm = permutation_matrix::<F>(shape, p, g).expect("generators stabilize");
            pm.sub(&Matrix::identity(n).scale(&sign)).expect("square")
        })
        .collect();
    Matrix::vstack(n, &blocks).expect("equal widths").kernel()
}

/// Tensors fixed by `Stab(s)`.
pub fn symmetric_subspace<F: Field>(shape: &Shape, p: usize) -> Subspace<F> {
    fixed_subspace(shape, p, F::one())
}

/// Tensors on which `Stab(s)` acts through the sign character.
pub fn alternating_subspace<F: Field>(shape: &Shape, p: usize) -> Subspace<F> {
    fixed_subspace(shape, p, -F::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(v: &[usize]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    fn e(s: &Shape, p: usize, m: &[usize]) -> Tensor<Rational> {
        Tensor::basis(s, p, &MultiIndex(m.to_vec())).unwrap()
    }

    #[test]
    fn face_examples() {
        let s = shape(&[3, 3]);
        assert_eq!(e(&s, 2, &[0, 2]).face(1).unwrap(), e(&s, 1, &[0, 1]));
        assert!(e(&s, 2, &[1, 2]).face(1).unwrap().is_zero());
        assert!(matches!(e(&s, 0, &[0, 0]).face(0), Err(Error::DegreeZero)));
        assert!(e(&s, 2, &[0, 0]).face(3).is_err());
    }

    #[test]
    fn degeneracy_of_vertex() {
        let s = shape(&[2, 2]);
        let t = e(&s, 0, &[0, 0]).degeneracy(0).unwrap();
        assert_eq!(t.coeffs(), vec![Rational::from_i64(1); 4].as_slice());
    }

    #[test]
    fn boundary_examples() {
        let s = shape(&[2, 2]);
        assert_eq!(e(&s, 1, &[1, 1]).boundary().unwrap(), e(&s, 0, &[0, 0]));
        let t = shape(&[3, 3]);
        for m in [[0, 1], [1, 0]] {
            assert!(e(&t, 1, &m).boundary().unwrap().is_zero());
        }
    }

    #[test]
    fn matrices_agree_with_operators() {
        let s = shape(&[2, 3, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in 0..3 {
            let t = Tensor::<Rational>::random(&s, p, &mut rng);
            for i in 0..=p {
                let dm = degeneracy_matrix::<Rational>(&s, p, i).unwrap();
                assert_eq!(
                    dm.mul_vec(t.coeffs()).unwrap(),
                    t.degeneracy(i).unwrap().into_coeffs()
                );
                if p > 0 {
                    let fm = face_matrix::<Rational>(&s, p, i).unwrap();
                    assert_eq!(
                        fm.mul_vec(t.coeffs()).unwrap(),
                        t.face(i).unwrap().into_coeffs()
                    );
                }
            }
            if p > 0 {
                let b = boundary_matrix::<Rational>(&s, p);
                assert_eq!(
                    b.mul_vec(t.coeffs()).unwrap(),
                    t.boundary().unwrap().into_coeffs()
                );
            }
        }
    }

    #[test]
    fn permutation_rules() {
        let s = shape(&[3, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = Tensor::<Rational>::random(&s, 2, &mut rng);
        assert_eq!(t.permute_axes(&AxisPermutation::identity(2)).unwrap(), t);
        let swap = AxisPermutation::transposition(2, 0, 1);
        let lhs = t.permute_axes(&swap).unwrap().face(0).unwrap();
        let rhs = t.face(0).unwrap().permute_axes(&swap).unwrap();
        assert_eq!(lhs, rhs);
        let u = Tensor::<Rational>::zeros(&shape(&[2, 3]), 1);
        assert!(matches!(
            u.permute_axes(&swap),
            Err(Error::NotInStabilizer(_))
        ));
    }

    #[test]
    fn mismatched_arithmetic_rejected() {
        let s = shape(&[3, 3]);
        let a = Tensor::<Rational>::zeros(&s, 1);
        let b = Tensor::<Rational>::zeros(&s, 2);
        assert!(a.add(&b).is_err());
        assert!(a.add(&Tensor::zeros(&shape(&[2, 2]), 1)).is_err());
        assert!(Tensor::<Rational>::new(s, 1, vec![]).is_err());
    }

    #[test]
    fn constant_shape_matrix_degree() {
        for n in 1..5 {
            let s = shape(&[n, n]);
            assert_eq!(s.index_count(n - 1), n * n);
        }
    }

    #[test]
    fn symmetric_and_alternating_dims() {
        let s = shape(&[3, 3]);
        // symmetric and antisymmetric 3×3 matrices
        assert_eq!(symmetric_subspace::<Rational>(&s, 2).dim(), 6);
        assert_eq!(alternating_subspace::<Rational>(&s, 2).dim(), 3);
        let t = shape(&[2, 3]);
        assert_eq!(symmetric_subspace::<Rational>(&t, 1).dim(), 6);
    }
}
