//! Closed-form ranks, Stirling forms and the `k = n` classification, each
//! paired with a direct count over face images.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::normalization::binomial;
use crate::shape::{coface, Shape};

/// Stirling number of the second kind `S(k, m)`.
pub fn stirling2(k: usize, m: usize) -> BigUint {
    // row-by-row recurrence S(k, m) = m S(k−1, m) + S(k−1, m−1)
    let mut row = vec![BigUint::zero(); m + 1];
    row[0] = BigUint::one();
    for _ in 0..k {
        for j in (1..=m).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[m].clone()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn alternating_sum(shape: &Shape, p: usize, terms: usize) -> BigInt {
    let bounds = shape.bounds(p);
    let mut acc = BigInt::zero();
    for t in 0..=terms {
        let mut prod = BigInt::from(binomial(terms, t));
        for &m in &bounds {
            prod *= BigInt::from(m as i64 + 1 - t as i64);
        }
        if t % 2 == 0 {
            acc += prod;
        } else {
            acc -= prod;
        }
    }
    acc
}

/// Inclusion–exclusion rank of `R_{p,j}` (any `j`, `p ≥ 1`).
pub fn rank_r_formula(shape: &Shape, p: usize) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(alternating_sum(shape, p, p))
}

/// Inclusion–exclusion rank of `Z_p(N_•)`.
pub fn rank_z_formula(shape: &Shape, p: usize) -> BigInt {
    alternating_sum(shape, p, p + 1)
}

/// `(rank R_{p,j}, rank Z_p)`; the first is `None` in degree 0.
pub fn rank_formulas(shape: &Shape, p: usize, j: usize) -> Result<(Option<BigInt>, BigInt)> {
    if p > 0 && j > p {
        return Err(Error::IndexOutOfRange {
            index: j,
            degree: p,
        });
    }
    let r = if p == 0 {
        None
    } else {
        Some(rank_r_formula(shape, p)?)
    };
    Ok((r, rank_z_formula(shape, p)))
}

/// `(rank Z_p, rank N_p) = ((p+1)! S(k,p+1), p! S(k,p) + (p+1)! S(k,p+1))`
/// for a constant shape of order `k`.
pub fn stirling_forms(k: usize, p: usize) -> (BigUint, BigUint) {
    let z = factorial(p + 1) * stirling2(k, p + 1);
    let n = factorial(p) * stirling2(k, p) + &z;
    (z, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub shape: Vec<usize>,
    pub k: usize,
    pub n: usize,
    /// Largest `p` with `R_{p,j} ≠ 0`.
    pub threshold: usize,
    pub strict_n_hypergroupoid: bool,
    /// Degrees `1..=k` carry non-unique fillers.
    pub nonunique_degrees: (usize, usize),
    pub reason: String,
}

pub fn classify_shape(shape: &Shape) -> Classification {
    let (k, n) = (shape.k(), shape.n());
    let reason = match k.cmp(&n) {
        std::cmp::Ordering::Equal => {
            "k = n: fillers unique above n and non-unique at n".to_string()
        }
        std::cmp::Ordering::Greater => {
            format!(
                "k > n: fillers non-unique in degrees {}..={k}, above n = {n}",
                n + 1
            )
        }
        std::cmp::Ordering::Less => {
            format!(
                "k < n: R_(n,j) = 0, fillers already unique from degree {}",
                k + 1
            )
        }
    };
    Classification {
        shape: shape.entries().to_vec(),
        k,
        n,
        threshold: k,
        strict_n_hypergroupoid: k == n,
        nonunique_degrees: (1, k),
        reason,
    }
}

/// For each `i ∈ [p]`, which positions of `I_p` lie in the image of `Δ_i`.
/// Built by pushing every element of `I_{p−1}` through `δ_i`.
pub fn face_image_masks(shape: &Shape, p: usize) -> Result<Vec<Vec<bool>>> {
    if p == 0 {
        return Err(Error::DegreeZero);
    }
    let target = shape.index_set(p);
    let source = shape.index_set(p - 1);
    let mut masks = vec![vec![false; target.len()]; p + 1];
    let mut image = vec![0; shape.k()];
    for m in source.iter() {
        for (i, mask) in masks.iter_mut().enumerate() {
            for (slot, &x) in image.iter_mut().zip(m.coords()) {
                *slot = coface(i, x);
            }
            mask[target.position(&image).expect("cofaces land in I_p")] = true;
        }
    }
    Ok(masks)
}

/// Number of coordinates of `I_p` outside the images of `Δ_i` for all `i`
/// in `faces`; this is `dim ∩_{i ∈ faces} ker d_i`.
pub fn face_kernel_count(
    masks: &[Vec<bool>],
    faces: impl IntoIterator<Item = usize> + Clone,
) -> usize {
    let len = masks.first().map_or(0, Vec::len);
    (0..len)
        .filter(|&pos| faces.clone().into_iter().all(|i| !masks[i][pos]))
        .count()
}

/// Counted (not closed-form) dimensions in degree `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountedDims {
    pub p: usize,
    pub dim_x: usize,
    /// `dim R_{p,j}` for every `j ∈ [p]`; empty in degree 0.
    pub dim_r: Vec<usize>,
    pub dim_n: usize,
    pub dim_z: usize,
}

pub fn counted_dims(shape: &Shape, p: usize) -> CountedDims {
    let dim_x = shape.index_count(p);
    if p == 0 {
        return CountedDims {
            p,
            dim_x,
            dim_r: Vec::new(),
            dim_n: dim_x,
            dim_z: dim_x,
        };
    }
    let masks = face_image_masks(shape, p).expect("p >= 1");
    CountedDims {
        p,
        dim_x,
        dim_r: (0..=p)
            .map(|j| face_kernel_count(&masks, (0..=p).filter(move |&i| i != j)))
            .collect(),
        dim_n: face_kernel_count(&masks, 1..=p),
        dim_z: face_kernel_count(&masks, 0..=p),
    }
}

/// Rank of `d_0 : N_{p+1} → N_p`, i.e. `dim B_p(N_•)`. The face `d_0` is a
/// coordinate selection, so the rank is the number of basis vectors of
/// `N_{p+1}` that it does not kill.
pub fn normalized_boundary_rank(shape: &Shape, p: usize) -> usize {
    let masks = face_image_masks(shape, p + 1).expect("p + 1 >= 1");
    let len = masks[0].len();
    (0..len)
        .filter(|&pos| (1..=p + 1).all(|i| !masks[i][pos]) && masks[0][pos])
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub p: usize,
    pub dim_x: usize,
    /// Counted `dim R_{p,j}` for the chosen `j`; `None` in degree 0 or when `j > p`.
    pub dim_r: Option<usize>,
    pub dim_n: usize,
    pub dim_z: usize,
    pub formula_r: Option<String>,
    pub formula_z: String,
    /// `dim R_{p,j}` agrees across all `j`.
    pub r_independent_of_j: bool,
    pub stirling_z: Option<String>,
    pub stirling_n: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyRow {
    pub p: usize,
    pub rank_n_next: usize,
    pub rank_z_next: usize,
    pub rank_z: usize,
    pub boundary_rank: usize,
    /// `B_p(N_•) ≠ 0` is expected exactly when `k ≥ p + 1`.
    pub boundary_expected_nonzero: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub shape: Vec<usize>,
    pub j: usize,
    pub rows: Vec<RankRow>,
    pub consistency: Vec<ConsistencyRow>,
    pub pass: bool,
}

impl RankReport {
    pub const CSV_HEADER: &'static str = "p,dimX,dimR,dimN,dimZ,fR,fZ,ok";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let dash = || "-".to_string();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.p,
                r.dim_x,
                r.dim_r.map_or_else(dash, |d| d.to_string()),
                r.dim_n,
                r.dim_z,
                r.formula_r.clone().unwrap_or_else(dash),
                r.formula_z,
                if r.ok { "ok" } else { "FAIL" }
            ));
        }
        out
    }
}

fn rank_row(shape: &Shape, p: usize, j: usize) -> RankRow {
    let counted = counted_dims(shape, p);
    let formula_r = if p == 0 {
        None
    } else {
        Some(rank_r_formula(shape, p).expect("p >= 1"))
    };
    let formula_z = rank_z_formula(shape, p);
    let r_independent_of_j = counted.dim_r.windows(2).all(|w| w[0] == w[1]);
    let dim_r = counted.dim_r.get(j).copied();
    let r_matches = match &formula_r {
        None => true,
        Some(f) => counted.dim_r.iter().all(|&d| *f == BigInt::from(d)),
    };
    // R_{p,0} = N_p
    let n_matches = match &formula_r {
        None => counted.dim_n == counted.dim_x,
        Some(f) => *f == BigInt::from(counted.dim_n),
    };
    let z_matches = formula_z == BigInt::from(counted.dim_z);
    let (stirling_z, stirling_n, stirling_ok) = if shape.is_constant() {
        let (z, n) = stirling_forms(shape.k(), p);
        let ok = BigInt::from(z.clone()) == formula_z && BigUint::from(counted.dim_n) == n;
        (Some(z.to_string()), Some(n.to_string()), ok)
    } else {
        (None, None, true)
    };
    RankRow {
        p,
        dim_x: counted.dim_x,
        dim_r,
        dim_n: counted.dim_n,
        dim_z: counted.dim_z,
        formula_r: formula_r.map(|f| f.to_string()),
        formula_z: formula_z.to_string(),
        r_independent_of_j,
        stirling_z,
        stirling_n,
        ok: r_matches && n_matches && z_matches && r_independent_of_j && stirling_ok,
    }
}

/// Rank table for `0 ≤ p ≤ p_max` with the consistency relations
/// `rank N_{p+1} = rank Z_{p+1} + rank Z_p` and the `B_p ≠ 0` criterion
/// for `0 ≤ p < p_max`.
pub fn consistency_checks(shape: &Shape, p_max: usize, j: usize) -> Result<RankReport> {
    if p_max == 0 {
        return Err(Error::Precondition("p_max must be at least 1".into()));
    }
    let rows: Vec<RankRow> = (0..=p_max).map(|p| rank_row(shape, p, j)).collect();
    let consistency: Vec<ConsistencyRow> = (0..p_max)
        .map(|p| {
            let (next, cur) = (&rows[p + 1], &rows[p]);
            let boundary_rank = normalized_boundary_rank(shape, p);
            let boundary_expected_nonzero = shape.k() > p;
            ConsistencyRow {
                p,
                rank_n_next: next.dim_n,
                rank_z_next: next.dim_z,
                rank_z: cur.dim_z,
                boundary_rank,
                boundary_expected_nonzero,
                ok: next.dim_n == next.dim_z + cur.dim_z
                    && (boundary_rank > 0) == boundary_expected_nonzero,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok) && consistency.iter().all(|c| c.ok);
    Ok(RankReport {
        shape: shape.entries().to_vec(),
        j,
        rows,
        consistency,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(v: &[usize]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), BigUint::one());
        for k in 1..6 {
            assert!(stirling2(k, 0).is_zero());
        }
        assert_eq!(stirling2(3, 2), BigUint::from(3u32));
        assert!(stirling2(2, 3).is_zero());
        assert_eq!(stirling2(10, 4), BigUint::from(34105u32));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            rank_formulas(&shape(&[3, 3]), 2, 0).unwrap(),
            (Some(b(2)), b(0))
        );
        assert_eq!(
            rank_formulas(&shape(&[3, 3, 3]), 2, 1).unwrap(),
            (Some(b(12)), b(6))
        );
        assert_eq!(
            rank_formulas(&shape(&[3, 3]), 1, 1).unwrap(),
            (Some(b(3)), b(2))
        );
        assert_eq!(rank_formulas(&shape(&[2, 4]), 0, 0).unwrap(), (None, b(3)));
    }

    #[test]
    fn classification_examples() {
        assert!(classify_shape(&shape(&[3, 3])).strict_n_hypergroupoid);
        let c = classify_shape(&shape(&[2, 2]));
        assert!(!c.strict_n_hypergroupoid);
        assert_eq!((c.k, c.n), (2, 1));
        let c = classify_shape(&shape(&[5, 5]));
        assert!(!c.strict_n_hypergroupoid);
        assert_eq!((c.threshold, c.n), (2, 4));
    }

    #[test]
    fn consistency_examples() {
        let r = consistency_checks(&shape(&[3, 3]), 3, 0).unwrap();
        assert!(r.pass);
        let c1 = &r.consistency[1];
        assert_eq!((c1.rank_n_next, c1.rank_z_next, c1.rank_z), (2, 0, 2));
        assert_eq!(r.consistency[2].boundary_rank, 0);
        let r = consistency_checks(&shape(&[3, 3, 3]), 2, 0).unwrap();
        assert!(r.pass);
        assert!(r.consistency[1].boundary_rank > 0);
    }

    #[test]
    fn csv_rows() {
        let r = consistency_checks(&shape(&[3, 3]), 3, 0).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], RankReport::CSV_HEADER);
        assert!(lines[1].starts_with("0,1,-,1,1,-,"));
        assert_eq!(lines[3], "2,9,2,2,0,2,0,ok");
        let dims: Vec<&str> = lines[1..]
            .iter()
            .map(|l| l.split(',').nth(2).unwrap())
            .collect();
        assert_eq!(dims, vec!["-", "3", "2", "0"]);
    }
}
