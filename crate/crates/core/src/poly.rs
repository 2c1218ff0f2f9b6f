//! Sparse multivariate integer polynomials and fraction-free elimination,
//! enough to compute ranks of small matrices with indeterminate entries.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A polynomial in `Z[x_0, …, x_{v−1}]`; monomials are exponent vectors
/// compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: BigInt) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Poly::constant(vars, BigInt::one())
    }

    /// The indeterminate `x_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Poly::zero(vars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    /// `self / d` when the division is exact, `None` otherwise.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lead_e, lead_c) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.vars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let shift: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            for (de, dc) in &d.terms {
                let te = de.iter().zip(&shift).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc * &q));
            }
            quot.add_term(shift, q);
        }
        Some(quot)
    }
}

/// Rank over the fraction field by Bareiss elimination.
///
/// # Panics
/// If a Bareiss division is not exact, which would indicate a bug.
pub fn symbolic_rank(mut a: Vec<Vec<Poly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let vars = a.first().and_then(|r| r.first()).map_or(0, |p| p.vars);
    let mut prev = Poly::one(vars);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].term_count());
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = a[rank][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[rank][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = Poly::zero(vars);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.sub(&y.mul(&Poly::constant(2, BigInt::from(-1))));
        let prod = s.mul(&x.sub(&y));
        assert_eq!(prod.exact_div(&s), Some(x.sub(&y)));
        assert_eq!(prod.term_count(), 2);
        assert!(x.exact_div(&y).is_none());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn ranks() {
        let v = |i| Poly::var(4, i);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        assert_eq!(symbolic_rank(m), 2);
        let m = vec![vec![v(0), v(0)], vec![v(1), v(1)]];
        assert_eq!(symbolic_rank(m), 1);
        let m = vec![
            vec![v(0), v(1), v(2)],
            vec![v(1), v(2), v(3)],
            vec![v(0), v(1), v(2)],
        ];
        assert_eq!(symbolic_rank(m), 2);
    }
}
