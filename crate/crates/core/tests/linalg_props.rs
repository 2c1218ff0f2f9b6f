use dstm::field::{Field, LARGE_PRIMES};
use dstm::linalg::{Matrix, Subspace};
use dstm::{with_prime_field, Gf31, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect()
}

fn integer_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        (
            Just(c),
            prop::collection::vec(prop::collection::vec(-4i64..=4, c), r),
        )
    })
}

fn lift<F: Field>(rows: &[Vec<i64>]) -> Vec<Vec<F>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
        .collect()
}

fn rank_mod(q: u64, cols: usize, rows: &[Vec<i64>]) -> usize {
    with_prime_field!(q, G => Matrix::from_rows(cols, lift::<G>(rows)).unwrap().rank())
        .expect("compiled prime")
}

/// Samples primes above `2^30` until three agree with the rational rank;
/// gives up after five disagreements.
fn modular_agreement(cols: usize, rows: &[Vec<i64>]) -> bool {
    let rational = Matrix::from_rows(cols, to_q(rows)).unwrap().rank();
    let (mut agree, mut disagree) = (0, 0);
    for &q in LARGE_PRIMES.iter() {
        if rank_mod(q, cols, rows) == rational {
            agree += 1;
        } else {
            disagree += 1;
        }
        if agree == 3 {
            return true;
        }
        if disagree == 5 {
            return false;
        }
    }
    false
}

/// Replaces each row by itself plus integer multiples of the later rows.
fn remix(rows: &[Vec<i64>], weights: &[i64]) -> Vec<Vec<i64>> {
    let mut out = rows.to_vec();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let w = weights[(i * 7 + j) % weights.len()];
            for c in 0..rows[i].len() {
                out[i][c] += w * rows[j][c];
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_nullity_over_q((cols, rows) in integer_matrix()) {
        let m = Matrix::from_rows(cols, to_q(&rows)).unwrap();
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.dim(), cols);
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Rational::from_i64(0)));
        }
    }

    #[test]
    fn rank_nullity_over_fp((cols, rows) in integer_matrix()) {
        let m = Matrix::from_rows(cols, lift::<Gf31>(&rows)).unwrap();
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.dim(), cols);
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Gf31::from_i64(0)));
        }
    }

    #[test]
    fn rank_agrees_modulo_large_primes((cols, rows) in integer_matrix()) {
        prop_assert!(modular_agreement(cols, &rows));
    }

    #[test]
    fn meet_join_ignore_presentation(
        a in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..4),
        b in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..4),
        weights in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let u = Subspace::from_rows(5, to_q(&a)).unwrap();
        let w = Subspace::from_rows(5, to_q(&b)).unwrap();
        let u2 = Subspace::from_rows(5, to_q(&remix(&a, &weights))).unwrap();
        let w2 = Subspace::from_rows(5, to_q(&remix(&b, &weights))).unwrap();
        prop_assert_eq!(&u, &u2);
        let (meet, join) = u.meet_join(&w).unwrap();
        let (meet2, join2) = w2.meet_join(&u2).unwrap();
        prop_assert_eq!(&meet, &meet2);
        prop_assert_eq!(&join, &join2);
        prop_assert_eq!(meet.dim() + join.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&w).unwrap());
        prop_assert!(u.is_subspace_of(&join).unwrap() && w.is_subspace_of(&join).unwrap());
    }
}

#[test]
fn modular_check_detects_a_bad_prime() {
    // det = q for q = 2^31 - 1, so this prime alone disagrees.
    let rows = vec![vec![2_147_483_647, 0], vec![0, 1]];
    assert_eq!(rank_mod(2_147_483_647, 2, &rows), 1);
    assert!(modular_agreement(2, &rows));
}
