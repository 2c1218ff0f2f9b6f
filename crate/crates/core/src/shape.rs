//! Shapes, the index sets `I_p`, and the diagonal cosimplicial maps between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple `(n_1, …, n_k)` of positive integers.
///
/// The simplicial dimension is `n = min(n_a) − 1`, and degree-`p` indices on
/// axis `a` range over `0..=M_a(p)` with `M_a(p) = n_a − 1 − n + p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape {
    entries: Vec<usize>,
}

impl Shape {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidShape(
                "a shape needs at least one axis".into(),
            ));
        }
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidShape(format!(
                "entry {pos} is zero; entries must be positive"
            )));
        }
        Ok(Shape { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of axes (the tensor order).
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    /// Simplicial dimension `min(n_a) − 1`.
    pub fn n(&self) -> usize {
        self.entries.iter().min().copied().unwrap_or(1) - 1
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }

    /// `M_a(p)`, the largest coordinate allowed on axis `a` in degree `p`.
    pub fn bound(&self, axis: usize, p: usize) -> usize {
        self.entries[axis] - 1 - self.n() + p
    }

    pub fn bounds(&self, p: usize) -> Vec<usize> {
        (0..self.k()).map(|a| self.bound(a, p)).collect()
    }

    pub fn index_set(&self, p: usize) -> IndexSet {
        IndexSet::new(self.bounds(p), p)
    }

    /// `|I_p| = ∏ (M_a(p) + 1)`.
    pub fn index_count(&self, p: usize) -> usize {
        self.bounds(p).iter().map(|m| m + 1).product()
    }

    /// Whether `perm` lies in `Stab(s)`, i.e. only moves axes within blocks
    /// of equal entries.
    pub fn stabilizes(&self, perm: &AxisPermutation) -> bool {
        perm.len() == self.k()
            && (0..self.k()).all(|a| self.entries[perm.image(a)] == self.entries[a])
    }

    /// Adjacent transpositions inside each block of equal entries; they
    /// generate `Stab(s)`.
    pub fn stabilizer_generators(&self) -> Vec<AxisPermutation> {
        let k = self.k();
        let mut gens = Vec::new();
        for a in 0..k {
            // next axis with the same bound
            if let Some(b) = (a + 1..k).find(|&b| self.entries[b] == self.entries[a]) {
                gens.push(AxisPermutation::transposition(k, a, b));
            }
        }
        gens
    }

    pub fn to_arg_string(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Shape::new(v)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Self {
        s.entries
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_arg_string())
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidShape(format!("cannot parse entry {t:?}")))
                    .and_then(|v| {
                        if v <= 0 {
                            Err(Error::InvalidShape(format!("entry {v} is not positive")))
                        } else {
                            Ok(v as usize)
                        }
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(entries)
    }
}

/// A point of `ℕ^k`; membership in a particular `I_p` is checked by [`IndexSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    /// The set of values `im(m)`, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_value(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    /// Whether every value in `values` occurs among the coordinates.
    pub fn covers(&self, values: impl IntoIterator<Item = usize>) -> bool {
        values.into_iter().all(|x| self.0.contains(&x))
    }

    pub fn min(&self) -> usize {
        self.0.iter().min().copied().unwrap_or(0)
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The box `I_p = ∏_a [0, M_a(p)]` in lexicographic order (first axis most
/// significant). Positions in this order label all tensor coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
    degree: usize,
}

impl IndexSet {
    fn new(bounds: Vec<usize>, degree: usize) -> Self {
        let k = bounds.len();
        let mut strides = vec![1; k];
        for a in (0..k.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * (bounds[a + 1] + 1);
        }
        let len = bounds.iter().map(|m| m + 1).product();
        IndexSet {
            bounds,
            strides,
            len,
            degree,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        coords.len() == self.bounds.len() && coords.iter().zip(&self.bounds).all(|(x, m)| x <= m)
    }

    /// Lexicographic position, `None` when `coords` is outside the box.
    pub fn position(&self, coords: &[usize]) -> Option<usize> {
        if !self.contains(coords) {
            return None;
        }
        Some(coords.iter().zip(&self.strides).map(|(x, s)| x * s).sum())
    }

    pub fn at(&self, mut pos: usize) -> MultiIndex {
        let mut coords = vec![0; self.bounds.len()];
        for (a, s) in self.strides.iter().enumerate() {
            coords[a] = pos / s;
            pos %= s;
        }
        MultiIndex(coords)
    }

    pub fn iter(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.len).map(move |pos| self.at(pos))
    }

    pub fn check(&self, m: &MultiIndex) -> Result<usize> {
        self.position(&m.0)
            .ok_or_else(|| Error::MultiIndexOutOfBounds(m.0.clone()))
    }
}

/// `δ_i(x)`: the coface skipping `i`.
pub fn coface(i: usize, x: usize) -> usize {
    if x < i {
        x
    } else {
        x + 1
    }
}

/// `σ_i(x)`: the codegeneracy repeating `i`.
pub fn codegeneracy(i: usize, x: usize) -> usize {
    if x <= i {
        x
    } else {
        x - 1
    }
}

/// The two kinds of generators of `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexMapKind {
    Coface,
    Codegeneracy,
}

impl Shape {
    /// `Δ_i^p : I_{p−1} → I_p` or `Σ_i^p : I_{p+1} → I_p`, applied to `m`.
    pub fn index_map(
        &self,
        p: usize,
        i: usize,
        kind: IndexMapKind,
        m: &MultiIndex,
    ) -> Result<MultiIndex> {
        if i > p {
            return Err(Error::IndexOutOfRange {
                index: i,
                degree: p,
            });
        }
        match kind {
            IndexMapKind::Coface => {
                if p == 0 {
                    return Err(Error::DegreeZero);
                }
                self.index_set(p - 1).check(m)?;
                Ok(MultiIndex(m.0.iter().map(|&x| coface(i, x)).collect()))
            }
            IndexMapKind::Codegeneracy => {
                self.index_set(p + 1).check(m)?;
                Ok(MultiIndex(
                    m.0.iter().map(|&x| codegeneracy(i, x)).collect(),
                ))
            }
        }
    }
}

/// A permutation `σ` of the axes, stored as its images `σ(0), …, σ(k−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisPermutation(Vec<usize>);

impl AxisPermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(AxisPermutation(images))
    }

    pub fn identity(k: usize) -> Self {
        AxisPermutation((0..k).collect())
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(a, b);
        AxisPermutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        AxisPermutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AxisPermutation) -> Self {
        AxisPermutation(other.0.iter().map(|&b| self.0[b]).collect())
    }

    /// `+1` or `−1`.
    pub fn sign(&self) -> i64 {
        let mut visited = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.0[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `σ·m` with `(σ·m)_a = m_{σ⁻¹(a)}`.
    pub fn act(&self, m: &[usize]) -> Vec<usize> {
        let mut out = vec![0; m.len()];
        for (a, &x) in m.iter().enumerate() {
            out[self.0[a]] = x;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(v: &[usize]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions_and_bounds() {
        let s = shape(&[2, 3, 4]);
        assert_eq!(s.k(), 3);
        assert_eq!(s.n(), 1);
        assert_eq!(s.bounds(0), vec![0, 1, 2]);
        assert_eq!(s.bounds(2), vec![2, 3, 4]);
    }

    #[test]
    fn index_set_examples() {
        let s = shape(&[3, 3]);
        let i0: Vec<_> = s.index_set(0).iter().collect();
        assert_eq!(i0, vec![MultiIndex(vec![0, 0])]);
        assert_eq!(s.index_set(2).len(), 9);
        let i2: Vec<_> = s.index_set(2).iter().map(|m| m.0).collect();
        assert_eq!(i2[1], vec![0, 1]);
        assert_eq!(i2[3], vec![1, 0]);
        let t = shape(&[2, 3]);
        assert_eq!(t.bounds(1), vec![1, 2]);
        assert_eq!(t.index_set(1).len(), 6);
    }

    #[test]
    fn index_map_examples() {
        let s = shape(&[3, 3]);
        let m = s
            .index_map(2, 1, IndexMapKind::Coface, &MultiIndex(vec![0, 1]))
            .unwrap();
        assert_eq!(m.0, vec![0, 2]);
        let t = shape(&[2, 2]);
        let m = t
            .index_map(0, 0, IndexMapKind::Codegeneracy, &MultiIndex(vec![1, 1]))
            .unwrap();
        assert_eq!(m.0, vec![0, 0]);
        let m = t
            .index_map(1, 0, IndexMapKind::Coface, &MultiIndex(vec![0, 0]))
            .unwrap();
        assert_eq!(m.0, vec![1, 1]);
    }

    #[test]
    fn index_map_errors() {
        let s = shape(&[3, 3]);
        assert!(s
            .index_map(2, 3, IndexMapKind::Coface, &MultiIndex(vec![0, 0]))
            .is_err());
        assert!(s
            .index_map(2, 0, IndexMapKind::Coface, &MultiIndex(vec![2, 0]))
            .is_err());
        assert!(s
            .index_map(0, 0, IndexMapKind::Coface, &MultiIndex(vec![0, 0]))
            .is_err());
    }

    #[test]
    fn shape_parsing() {
        assert_eq!("3, 3".parse::<Shape>().unwrap(), shape(&[3, 3]));
        assert!("3,0".parse::<Shape>().is_err());
        assert!("3,-1".parse::<Shape>().is_err());
        assert!("".parse::<Shape>().is_err());
    }

    #[test]
    fn stabilizer_membership() {
        let s = shape(&[2, 3]);
        assert!(!s.stabilizes(&AxisPermutation::transposition(2, 0, 1)));
        assert!(s.stabilizer_generators().is_empty());
        let c = shape(&[3, 2, 3]);
        assert!(c.stabilizes(&AxisPermutation::transposition(3, 0, 2)));
        assert_eq!(c.stabilizer_generators().len(), 1);
    }

    #[test]
    fn permutation_algebra() {
        let p = AxisPermutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&p.inverse()), AxisPermutation::identity(3));
        assert_eq!(p.sign(), 1);
        assert_eq!(AxisPermutation::transposition(3, 0, 2).sign(), -1);
        assert_eq!(p.act(&[10, 20, 30]), vec![30, 10, 20]);
        assert!(AxisPermutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn tight_axes_vanish_in_degree_zero() {
        for entries in [vec![2, 5], vec![4, 3, 3], vec![1, 2, 3], vec![5]] {
            let s = Shape::new(entries).unwrap();
            let tight: Vec<usize> = (0..s.k())
                .filter(|&a| s.entries()[a] - 1 == s.n())
                .collect();
            for m in s.index_set(0).iter() {
                assert!(tight.iter().all(|&a| m.0[a] == 0));
            }
        }
    }
}
