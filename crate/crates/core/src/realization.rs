//! The standard simplex module `C_• = F[Δⁿ]`, realization matrices and
//! kernel sequences of degree-`n` tensors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{is_integral, reduce_rational, Field};
use crate::linalg::{chain_betti, induced_boundaries, Matrix, Subspace};
use crate::poly::{symbolic_rank, Poly};
use crate::shape::{codegeneracy, coface, MultiIndex, Shape};
use crate::tensor::{boundary_matrix, face_matrix, Tensor};

/// A monotone map `α : [p] → [q]`, stored by its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonotoneMap {
    values: Vec<usize>,
    target: usize,
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition(
                "a monotone map needs a nonempty domain".into(),
            ));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return Err(Error::Precondition(format!(
                "{values:?} is not a monotone map into [{target}]"
            )));
        }
        Ok(MonotoneMap { values, target })
    }

    pub fn identity(p: usize) -> Self {
        MonotoneMap {
            values: (0..=p).collect(),
            target: p,
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `p` for `α : [p] → [q]`.
    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    /// `q` for `α : [p] → [q]`.
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<Self> {
        if first.target != self.source() {
            return Err(Error::DegreeMismatch {
                expected: self.source(),
                found: first.target,
            });
        }
        Ok(MonotoneMap {
            values: first.values.iter().map(|&x| self.values[x]).collect(),
            target: self.target,
        })
    }

    /// Epi–mono factorization into generators.
    pub fn factorize(&self) -> Factorization {
        let p = self.source();
        let codegeneracies = (0..p)
            .rev()
            .filter(|&j| self.values[j] == self.values[j + 1])
            .collect();
        let cofaces = (0..=self.target)
            .filter(|v| !self.values.contains(v))
            .collect();
        Factorization {
            codegeneracies,
            cofaces,
        }
    }
}

/// `α = δ_{i_r} ∘ … ∘ δ_{i_1} ∘ σ_{j_1} ∘ … ∘ σ_{j_s}`, listed in the order
/// the generators are applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// `j_s > … > j_1`: applied first, largest index first.
    pub codegeneracies: Vec<usize>,
    /// `i_1 < … < i_r`: applied after the codegeneracies, smallest first.
    pub cofaces: Vec<usize>,
}

impl Factorization {
    /// Pushes one integer through the generators.
    pub fn apply(&self, mut x: usize) -> usize {
        for &j in &self.codegeneracies {
            x = codegeneracy(j, x);
        }
        for &i in &self.cofaces {
            x = coface(i, x);
        }
        x
    }
}

/// All monotone maps `[p] → [n]` in lexicographic order.
pub fn monotone_maps(p: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p + 1);
    fn extend(p: usize, n: usize, lo: usize, current: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if current.len() == p + 1 {
            out.push(MonotoneMap {
                values: current.clone(),
                target: n,
            });
            return;
        }
        for v in lo..=n {
            current.push(v);
            extend(p, n, v, current, out);
            current.pop();
        }
    }
    extend(p, n, 0, &mut current, &mut out);
    out
}

/// `S_p = C(n + p + 1, p + 1)`.
pub fn simplex_dim(n: usize, p: usize) -> usize {
    let (top, k) = (n + p + 1, p + 1);
    let mut acc: u128 = 1;
    for i in 0..k.min(top - k) {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `I_•(α)(m)` for `α : [p] → [q]` and `m ∈ I_p`.
pub fn induced_index_map(shape: &Shape, alpha: &MonotoneMap, m: &MultiIndex) -> Result<MultiIndex> {
    shape.index_set(alpha.source()).check(m)?;
    let f = alpha.factorize();
    let image = MultiIndex(m.coords().iter().map(|&x| f.apply(x)).collect());
    debug_assert!(shape.index_set(alpha.target()).contains(image.coords()));
    Ok(image)
}

/// For each `m ∈ I_p` (rows) and `α ∈ Δ([p],[n])` (columns), the position of
/// `I_•(α)(m)` in `I_n`.
pub fn collision_table(shape: &Shape, p: usize) -> Vec<Vec<usize>> {
    let n = shape.n();
    let target = shape.index_set(n);
    let factors: Vec<Factorization> = monotone_maps(p, n)
        .iter()
        .map(MonotoneMap::factorize)
        .collect();
    shape
        .index_set(p)
        .iter()
        .map(|m| {
            factors
                .iter()
                .map(|f| {
                    let image: Vec<usize> = m.coords().iter().map(|&x| f.apply(x)).collect();
                    target.position(&image).expect("induced maps land in I_n")
                })
                .collect()
        })
        .collect()
}

/// Whether `(m, α) ↦ I_•(α)(m)` is injective on `I_p × Δ([p],[n])`.
pub fn collision_injective(shape: &Shape, p: usize) -> bool {
    let mut seen = std::collections::HashSet::new();
    collision_table(shape, p)
        .into_iter()
        .flatten()
        .all(|pos| seen.insert(pos))
}

/// `M_{T,p}`: rows `I_p`, columns `Δ([p],[n])`, entry `T[I_•(α)(m)]`.
pub fn realization_matrix<F: Field>(t: &Tensor<F>, p: usize) -> Result<Matrix<F>> {
    let n = t.shape().n();
    if t.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: t.degree(),
        });
    }
    let table = collision_table(t.shape(), p);
    let rows = table.len();
    let cols = simplex_dim(n, p);
    let entries = table
        .into_iter()
        .flat_map(|row| row.into_iter().map(|pos| t.coeffs()[pos].clone()))
        .collect();
    Matrix::from_entries(rows, cols, entries)
}

fn simplex_index(p: usize, n: usize) -> HashMap<Vec<usize>, usize> {
    monotone_maps(p, n)
        .into_iter()
        .enumerate()
        .map(|(i, a)| (a.values, i))
        .collect()
}

/// `d_i : C_p → C_{p−1}`, `α ↦ α ∘ δ_i` (drop the `i`-th value).
pub fn simplex_face_matrix<F: Field>(n: usize, p: usize, i: usize) -> Result<Matrix<F>> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    if i > p {
        return Err(Error::IndexOutOfRange {
            index: i,
            degree: p,
        });
    }
    let lower = simplex_index(p - 1, n);
    let maps = monotone_maps(p, n);
    let mut m = Matrix::zeros(lower.len(), maps.len());
    for (c, alpha) in maps.iter().enumerate() {
        let mut v = alpha.values.clone();
        v.remove(i);
        m.set(lower[&v], c, F::one());
    }
    Ok(m)
}

/// `s_i : C_p → C_{p+1}`, `α ↦ α ∘ σ_i` (repeat the `i`-th value).
pub fn simplex_degeneracy_matrix<F: Field>(n: usize, p: usize, i: usize) -> Result<Matrix<F>> {
    if i > p {
        return Err(Error::IndexOutOfRange {
            index: i,
            degree: p,
        });
    }
    let upper = simplex_index(p + 1, n);
    let maps = monotone_maps(p, n);
    let mut m = Matrix::zeros(upper.len(), maps.len());
    for (c, alpha) in maps.iter().enumerate() {
        let mut v = alpha.values.clone();
        v.insert(i, v[i]);
        m.set(upper[&v], c, F::one());
    }
    Ok(m)
}

/// `∂_p` on `C_•`; `0 × S_0` in degree 0.
pub fn simplex_boundary_matrix<F: Field>(n: usize, p: usize) -> Matrix<F> {
    if p == 0 {
        return Matrix::zeros(0, simplex_dim(n, 0));
    }
    let mut acc = Matrix::zeros(simplex_dim(n, p - 1), simplex_dim(n, p));
    for i in 0..=p {
        let f = simplex_face_matrix::<F>(n, p, i).expect("i <= p");
        let f = if i % 2 == 0 { f } else { f.scale(&-F::one()) };
        acc = acc.add(&f).expect("same size");
    }
    acc
}

/// `(K(T)_p)_{0 ≤ p ≤ p_max}` with `K(T)_p = ker M_{T,p} ⊆ C_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSequence<F> {
    pub shape: Shape,
    pub tensor_hash: String,
    pub subspaces: Vec<Subspace<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSequenceSummary {
    pub shape: Vec<usize>,
    pub tensor_hash: String,
    pub dims: Vec<usize>,
    /// Echelon basis of each `K_p`, entries as exact strings.
    pub bases: Vec<Vec<Vec<String>>>,
}

impl<F: Field> KernelSequence<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    pub fn summary(&self) -> KernelSequenceSummary {
        KernelSequenceSummary {
            shape: self.shape.entries().to_vec(),
            tensor_hash: self.tensor_hash.clone(),
            dims: self.dims(),
            bases: self
                .subspaces
                .iter()
                .map(|s| {
                    s.basis()
                        .iter()
                        .map(|v| v.iter().map(Field::to_exact_string).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// SHA-256 of the shape, degree and exact coefficients.
pub fn tensor_digest<F: Field>(t: &Tensor<F>) -> String {
    let entries: Vec<String> = t.coeffs().iter().map(Field::to_exact_string).collect();
    let text = format!(
        "{};{};{};{}",
        t.shape().to_arg_string(),
        t.degree(),
        F::characteristic(),
        entries.join(",")
    );
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// Kernel sequence through `p_max`; the incidence conditions are verified
/// before returning.
pub fn kernel_sequence<F: Field>(t: &Tensor<F>, p_max: usize) -> Result<KernelSequence<F>> {
    let subspaces = (0..=p_max)
        .map(|p| Ok(realization_matrix(t, p)?.kernel()))
        .collect::<Result<Vec<_>>>()?;
    let ks = KernelSequence {
        shape: t.shape().clone(),
        tensor_hash: tensor_digest(t),
        subspaces,
    };
    if !incidence_check(&ks)? {
        return Err(Error::CheckFailed(
            "kernel sequence violates d_i(K_p) ⊆ K_(p-1)".into(),
        ));
    }
    Ok(ks)
}

/// `d_i(K_p) ⊆ K_{p−1}` for every `p ≥ 1` and `i ∈ [p]`.
pub fn incidence_check<F: Field>(ks: &KernelSequence<F>) -> Result<bool> {
    let n = ks.shape.n();
    for p in 1..ks.subspaces.len() {
        for i in 0..=p {
            let d = simplex_face_matrix::<F>(n, p, i)?;
            for v in ks.subspaces[p].basis() {
                if !ks.subspaces[p - 1].contains(&d.mul_vec(v)?)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `f_{T,p−1} ∘ d_i = d_i ∘ f_{T,p}` for `1 ≤ p ≤ p_max`, `i ∈ [p]`.
pub fn realization_is_simplicial<F: Field>(t: &Tensor<F>, p_max: usize) -> Result<bool> {
    let (shape, n) = (t.shape(), t.shape().n());
    for p in 1..=p_max {
        let upper = realization_matrix(t, p)?;
        let lower = realization_matrix(t, p - 1)?;
        for i in 0..=p {
            let lhs = lower.mul(&simplex_face_matrix(n, p, i)?)?;
            let rhs = face_matrix::<F>(shape, p, i)?.mul(&upper)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRankReport {
    pub shape: Vec<usize>,
    pub p: usize,
    pub columns: usize,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub observed: Vec<usize>,
    /// Maximum observed rank; always a lower bound for the generic rank.
    pub rank: usize,
    pub kernel_dim: usize,
    pub all_trials_agree: bool,
    /// Rank over the function field, when the exact mode ran.
    pub exact_rank: Option<usize>,
}

/// Random tensor for trial `trial`: stream `trial` of ChaCha8 seeded by `seed`.
pub fn trial_tensor<F: Field>(shape: &Shape, seed: u64, trial: u64) -> Tensor<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    Tensor::random(shape, shape.n(), &mut rng)
}

/// Largest rank of `M_{T,p}` over `trials` random tensors in `F`.
pub fn sampled_generic_rank<F: Field>(
    shape: &Shape,
    p: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    (0..trials)
        .map(|trial| {
            Ok(realization_matrix(&trial_tensor::<F>(shape, seed, trial as u64), p)?.rank())
        })
        .collect()
}

/// Largest column count accepted by [`exact_generic_rank`].
pub const EXACT_MODE_MAX_COLUMNS: usize = 12;

/// Rank of the realization matrix with an indeterminate per coordinate of
/// `I_n`, computed by fraction-free elimination over `Z[v]`.
pub fn exact_generic_rank(shape: &Shape, p: usize) -> Result<usize> {
    let cols = simplex_dim(shape.n(), p);
    if cols > EXACT_MODE_MAX_COLUMNS {
        return Err(Error::Unsupported(format!(
            "exact generic rank needs S_p <= {EXACT_MODE_MAX_COLUMNS}, got {cols}"
        )));
    }
    let vars = shape.index_count(shape.n());
    let matrix = collision_table(shape, p)
        .into_iter()
        .map(|row| row.into_iter().map(|pos| Poly::var(vars, pos)).collect())
        .collect();
    Ok(symbolic_rank(matrix))
}

/// Generic rank `R'_p` by sampling over `GF(prime)`, optionally certified by
/// the exact mode.
pub fn generic_rank(
    shape: &Shape,
    p: usize,
    trials: usize,
    seed: u64,
    prime: u64,
    exact: bool,
) -> Result<GenericRankReport> {
    let observed =
        crate::with_prime_field!(prime, G => sampled_generic_rank::<G>(shape, p, trials, seed))
            .ok_or_else(|| Error::Unsupported(format!("prime {prime} has no compiled field")))??;
    let rank = observed.iter().copied().max().expect("trials >= 1");
    let columns = simplex_dim(shape.n(), p);
    let exact_rank = if exact {
        Some(exact_generic_rank(shape, p)?)
    } else {
        None
    };
    Ok(GenericRankReport {
        shape: shape.entries().to_vec(),
        p,
        columns,
        prime,
        seed,
        trials,
        all_trials_agree: observed.iter().all(|&r| r == rank),
        observed,
        rank,
        kernel_dim: columns - rank,
        exact_rank,
    })
}

/// Whether the ranks of `M_{T,p}` equal `generic[p]` for every listed degree.
pub fn is_generic<F: Field>(t: &Tensor<F>, generic: &[usize]) -> Result<bool> {
    for (p, &g) in generic.iter().enumerate() {
        if realization_matrix(t, p)?.rank() != g {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedHomology {
    pub p_max: usize,
    /// `dim ⟨T⟩_p` for `0 ≤ p ≤ p_max`.
    pub dims: Vec<usize>,
    /// Betti numbers of `⟨T⟩_•` for `0 ≤ p < p_max`.
    pub direct: Vec<usize>,
    /// The same numbers from the kernel sequence.
    pub from_kernels: Vec<usize>,
    pub agree: bool,
}

/// Homology of the generated subobject `⟨T⟩_•` computed twice: directly
/// from the images of `f_T`, and from `K(T)_•` via the long exact sequence
/// of `0 → K → C → ⟨T⟩ → 0`.
pub fn homology_generated<F: Field>(t: &Tensor<F>, p_max: usize) -> Result<GeneratedHomology> {
    let (shape, n) = (t.shape(), t.shape().n());
    if p_max < n {
        return Err(Error::Precondition(format!(
            "p_max must be at least n = {n}"
        )));
    }
    let matrices = (0..=p_max)
        .map(|p| realization_matrix(t, p))
        .collect::<Result<Vec<_>>>()?;

    let images: Vec<Subspace<F>> = matrices.iter().map(Matrix::column_space).collect();
    let x_boundaries: Vec<Matrix<F>> = (0..=p_max).map(|p| boundary_matrix(shape, p)).collect();
    let induced = induced_boundaries(&images, &x_boundaries)?;
    let direct = chain_betti(&induced, p_max)?.values[..p_max].to_vec();

    let kernels: Vec<Subspace<F>> = matrices.iter().map(Matrix::kernel).collect();
    let c_boundaries: Vec<Matrix<F>> = (0..=p_max).map(|p| simplex_boundary_matrix(n, p)).collect();
    let k_induced = induced_boundaries(&kernels, &c_boundaries)?;
    let k_betti = chain_betti(&k_induced, p_max)?.values;
    let b0_c = c_boundaries
        .get(1)
        .map_or_else(|| Subspace::zero(simplex_dim(n, 0)), Matrix::column_space);
    let b0_k = if p_max >= 1 {
        kernels[1].image(&c_boundaries[1])?
    } else {
        Subspace::zero(simplex_dim(n, 0))
    };
    let (meet, join) = kernels[0].meet_join(&b0_c)?;
    let mut from_kernels = Vec::with_capacity(p_max);
    for p in 0..p_max {
        from_kernels.push(match p {
            0 => simplex_dim(n, 0) - join.dim(),
            1 => meet.dim() - b0_k.dim(),
            _ => k_betti[p - 1],
        });
    }
    Ok(GeneratedHomology {
        p_max,
        dims: images.iter().map(Subspace::dim).collect(),
        agree: direct == from_kernels,
        direct,
        from_kernels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub samples: usize,
    pub seed: u64,
    pub generic_ranks: Vec<usize>,
    /// Pairs sharing a diagonal whose kernel sequences coincided.
    pub identical_pairs: usize,
    pub distinct_diagonal_pairs: usize,
    /// Of those, the ones whose `K_0` differed.
    pub separated_pairs: usize,
    pub distinct_k0: usize,
    pub scale_invariant: bool,
    pub pass: bool,
}

const MODULI_SHAPE: [usize; 2] = [3, 3];

fn tensor_with_diagonal(
    shape: &Shape,
    diag: &[BigRational],
    rng: &mut ChaCha8Rng,
) -> Tensor<BigRational> {
    Tensor::from_fn(shape, shape.n(), |m| {
        let c = m.coords();
        if c[0] == c[1] {
            diag[c[0]].clone()
        } else {
            BigRational::sample(rng)
        }
    })
}

fn sample_generic_with_diagonal(
    shape: &Shape,
    diag: &[BigRational],
    generic: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Tensor<BigRational>> {
    for _ in 0..64 {
        let t = tensor_with_diagonal(shape, diag, rng);
        if is_generic(&t, generic)? {
            return Ok(t);
        }
    }
    Err(Error::CheckFailed(
        "could not draw a generic tensor for this diagonal".into(),
    ))
}

fn sample_diagonal(rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    (0..3)
        .map(|_| loop {
            let v = BigRational::sample(rng);
            if !v.is_zero() {
                break v;
            }
        })
        .collect()
}

fn projectively_equal(a: &[BigRational], b: &[BigRational]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// The `(3,3)` fingerprint: generic kernel sequences through degree 2
/// depend only on the diagonal, and only projectively.
pub fn moduli_fingerprint(shape: &Shape, samples: usize, seed: u64) -> Result<ModuliReport> {
    if shape.entries() != MODULI_SHAPE {
        return Err(Error::Unsupported(format!(
            "the moduli fingerprint is only available for shape (3,3), got {shape}"
        )));
    }
    let n = shape.n();
    let generic = (0..=n)
        .map(|p| Ok(generic_rank(shape, p, 4, seed, crate::field::LARGE_PRIMES[5], false)?.rank))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identical_pairs = 0;
    let mut diagonals = Vec::with_capacity(samples);
    let mut k0s: Vec<Subspace<BigRational>> = Vec::with_capacity(samples);
    let mut scale_invariant = true;
    for _ in 0..samples {
        let diag = sample_diagonal(&mut rng);
        let a = sample_generic_with_diagonal(shape, &diag, &generic, &mut rng)?;
        let b = sample_generic_with_diagonal(shape, &diag, &generic, &mut rng)?;
        let ka = kernel_sequence(&a, n)?;
        let kb = kernel_sequence(&b, n)?;
        if ka.subspaces == kb.subspaces {
            identical_pairs += 1;
        }
        let five = BigRational::from_integer(BigInt::from(5));
        let scaled: Vec<BigRational> = diag.iter().map(|d| d * &five).collect();
        let c = sample_generic_with_diagonal(shape, &scaled, &generic, &mut rng)?;
        scale_invariant &= kernel_sequence(&c, 0)?.subspaces[0] == ka.subspaces[0];
        k0s.push(ka.subspaces[0].clone());
        diagonals.push(diag);
    }
    let mut distinct_diagonal_pairs = 0;
    let mut separated_pairs = 0;
    for i in 0..samples {
        for j in i + 1..samples {
            if !projectively_equal(&diagonals[i], &diagonals[j]) {
                distinct_diagonal_pairs += 1;
                if k0s[i] != k0s[j] {
                    separated_pairs += 1;
                }
            }
        }
    }
    let mut distinct: Vec<&Subspace<BigRational>> = Vec::new();
    for k in &k0s {
        if !distinct.contains(&k) {
            distinct.push(k);
        }
    }
    let distinct_k0 = distinct.len();
    Ok(ModuliReport {
        samples,
        seed,
        generic_ranks: generic,
        pass: identical_pairs == samples
            && separated_pairs == distinct_diagonal_pairs
            && distinct_k0 >= 3.min(samples)
            && scale_invariant,
        identical_pairs,
        distinct_diagonal_pairs,
        separated_pairs,
        distinct_k0,
        scale_invariant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChangeRow {
    pub prime: u64,
    pub dims: Vec<usize>,
    pub matches: bool,
    /// Degrees where the kernel grew after reduction.
    pub drop_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChangeReport {
    pub rational_dims: Vec<usize>,
    pub rows: Vec<BaseChangeRow>,
    /// Primes with a rank drop; informational.
    pub flagged: Vec<u64>,
}

fn kernel_dims_mod<G: Field>(t: &Tensor<BigRational>, n: usize) -> Result<Vec<usize>> {
    let reduced = t.map(|c| reduce_rational::<G>(c).expect("integer entries reduce"));
    (0..=n)
        .map(|p| Ok(realization_matrix(&reduced, p)?.kernel().dim()))
        .collect()
}

/// Compares `dim K_p` over `Q` and over `GF(q)` for `0 ≤ p ≤ n`.
pub fn base_change_check(t: &Tensor<BigRational>, primes: &[u64]) -> Result<BaseChangeReport> {
    if !t.coeffs().iter().all(is_integral) {
        return Err(Error::Precondition(
            "base change needs integer entries".into(),
        ));
    }
    let n = t.shape().n();
    let rational_dims = (0..=n)
        .map(|p| Ok(realization_matrix(t, p)?.kernel().dim()))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(primes.len());
    for &q in primes {
        let dims = crate::with_prime_field!(q, G => kernel_dims_mod::<G>(t, n))
            .ok_or_else(|| Error::Unsupported(format!("prime {q} has no compiled field")))??;
        let drop_degrees: Vec<usize> = (0..=n).filter(|&p| dims[p] != rational_dims[p]).collect();
        rows.push(BaseChangeRow {
            prime: q,
            matches: drop_degrees.is_empty(),
            dims,
            drop_degrees,
        });
    }
    let flagged = rows
        .iter()
        .filter(|r| !r.matches)
        .map(|r| r.prime)
        .collect();
    Ok(BaseChangeReport {
        rational_dims,
        rows,
        flagged,
    })
}

/// Draws a uniformly random monotone map `[p] → [q]`.
pub fn random_monotone<R: Rng + ?Sized>(p: usize, q: usize, rng: &mut R) -> MonotoneMap {
    let mut values: Vec<usize> = (0..=p).map(|_| rng.gen_range(0..=q)).collect();
    values.sort_unstable();
    MonotoneMap { values, target: q }
}
