use std::process::ExitCode;
use std::time::Instant;

use dstm::contraction::{
    contraction_check, equivariance_check, graded_collapse_check, invariant_subcomplex_checks,
};
use dstm::enumeration::{
    classify_shape, consistency_checks, counted_dims, rank_formulas, stirling_forms,
};
use dstm::horn::{
    horn_complex_check, horn_map_matrix, horn_restrict, horn_structure_check, missing_positions,
    moore_filler,
};
use dstm::linalg::Matrix;
use dstm::normalization::{degenerate_subspace, quotient_homology_check};
use dstm::realization::{
    collision_table, exact_generic_rank, generic_rank, homology_generated, is_generic,
    kernel_sequence, moduli_fingerprint, monotone_maps, realization_matrix, simplex_dim,
    trial_tensor,
};
use dstm::tensor::face_matrix;
use dstm::{MultiIndex, QTensor, Rational, Shape, Tensor};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const PRIME: u64 = 2_147_483_647;

fn shape(v: &[usize]) -> Shape {
    Shape::new(v.to_vec()).expect("valid shape")
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every ordered shape with `1 ≤ k ≤ max_k` and entries in `1..=max_entry`.
fn shape_family(max_k: usize, max_entry: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let mut digits = vec![1; k];
        loop {
            out.push(shape(&digits));
            let mut a = 0;
            while a < k && digits[a] == max_entry {
                digits[a] = 1;
                a += 1;
            }
            if a == k {
                break;
            }
            digits[a] += 1;
        }
    }
    out
}

/// Nullity of the faces `d_i`, `i ∈ faces`, stacked, over `Q`.
fn stacked_face_nullity(s: &Shape, p: usize, faces: impl Iterator<Item = usize>) -> usize {
    let blocks: Vec<Matrix<Rational>> = faces.map(|i| face_matrix(s, p, i).unwrap()).collect();
    let stacked = Matrix::vstack(s.index_count(p), &blocks).unwrap();
    stacked.cols() - stacked.rank()
}

fn criterion_1() -> Outcome {
    let s = shape(&[2, 2]);
    let report = generic_rank(&s, 1, 8, 0, PRIME, true).map_err(err)?;
    check(report.rank == 2, || format!("sampled rank {}", report.rank))?;
    check(report.exact_rank == Some(2), || {
        format!("exact rank {:?}", report.exact_rank)
    })?;
    check(report.kernel_dim == 1, || {
        format!("K'_1 = {}", report.kernel_dim)
    })?;
    check(report.observed.len() == 8, || "trial count".into())?;

    // Rows (v_m, v_00, v_11) with columns ordered (id, const 0, const 1).
    let maps = monotone_maps(1, 1);
    let col = |vals: &[usize]| maps.iter().position(|a| a.values() == vals).unwrap();
    let table = collision_table(&s, 1);
    let top = s.index_set(1);
    for (r, m) in s.index_set(1).iter().enumerate() {
        let got = [
            table[r][col(&[0, 1])],
            table[r][col(&[0, 0])],
            table[r][col(&[1, 1])],
        ];
        let want = [
            top.position(m.coords()).unwrap(),
            top.position(&[0, 0]).unwrap(),
            top.position(&[1, 1]).unwrap(),
        ];
        check(got == want, || {
            format!("symbolic row {r}: {got:?} vs {want:?}")
        })?;
    }
    Ok(format!(
        "R'_1 = {} (exact {}), K'_1 = {}, observed {:?}",
        report.rank,
        report.exact_rank.unwrap(),
        report.kernel_dim,
        report.observed
    ))
}

fn criterion_2() -> Outcome {
    let s = shape(&[3, 3]);
    let sizes: Vec<usize> = (0..=2).map(|p| simplex_dim(2, p)).collect();
    check(sizes == [3, 6, 10], || format!("S = {sizes:?}"))?;
    let rows: Vec<usize> = (0..=2).map(|p| s.index_count(p)).collect();
    check(rows == [1, 4, 9], || format!("R = {rows:?}"))?;
    let t = QTensor::new(s.clone(), 2, [1, 1, 1, 2, 2, 1, 2, 2, 3].map(q).to_vec()).map_err(err)?;
    let ranks: Vec<usize> = (0..=2)
        .map(|p| realization_matrix(&t, p).map(|m| m.rank()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    check(ranks[1] == 4 && ranks[2] == 8, || {
        format!("ranks {ranks:?}")
    })?;
    let ks = kernel_sequence(&t, 2).map_err(err)?;
    check(ks.dims() == [2, 2, 2], || format!("K' = {:?}", ks.dims()))?;
    for v in [[-2, 0, 0, 1, 0, 0], [-3, 0, 0, 0, 0, 1]] {
        let v: Vec<Rational> = v.map(q).to_vec();
        check(ks.subspaces[1].contains(&v).map_err(err)?, || {
            format!("{v:?} not in K_1")
        })?;
    }
    for p in 1..=2 {
        let exact = exact_generic_rank(&s, p).map_err(err)?;
        check(exact == ranks[p], || {
            format!("generic rank at p={p} is {exact}")
        })?;
    }
    Ok(format!(
        "S = {sizes:?}, R = {rows:?}, ranks {ranks:?}, K' = {:?}",
        ks.dims()
    ))
}

fn missing_count_brute(s: &Shape, p: usize, j: usize) -> usize {
    s.index_set(p)
        .iter()
        .filter(|m| (0..=p).all(|v| v == j || m.contains_value(v)))
        .count()
}

fn criterion_3() -> Outcome {
    let family = shape_family(4, 5);
    let mut checked = 0;
    for s in &family {
        let (k, n) = (s.k(), s.n());
        let c = classify_shape(s);
        check(c.strict_n_hypergroupoid == (k == n), || {
            format!("classify {s}")
        })?;
        let nonzero = |p: usize| (0..=p).any(|j| missing_count_brute(s, p, j) > 0);
        for p in 1..=k + 2 {
            for j in 0..=p {
                let count = missing_count_brute(s, p, j);
                check((count > 0) == (k >= p), || {
                    format!("{s} p={p} j={j}: |M| = {count}")
                })?;
                checked += 1;
            }
        }
        let brute_strict = n >= 1 && nonzero(n) && (n + 1..=k + 2).all(|p| !nonzero(p));
        check(brute_strict == c.strict_n_hypergroupoid, || {
            format!("brute strictness {s}")
        })?;
    }
    Ok(format!("{} shapes, {checked} (p, j) cells", family.len()))
}

fn criterion_4() -> Outcome {
    let family = shape_family(4, 5);
    let mut eliminated = 0;
    for s in &family {
        let k = s.k();
        for p in 0..=k + 2 {
            let (fr, fz) = rank_formulas(s, p, 0).map_err(err)?;
            let counted = counted_dims(s, p);
            check(fz == BigInt::from(counted.dim_z), || {
                format!("{s} p={p}: Z formula {fz}")
            })?;
            if let Some(fr) = &fr {
                for (j, &d) in counted.dim_r.iter().enumerate() {
                    check(*fr == BigInt::from(d), || {
                        format!("{s} p={p} j={j}: R formula {fr} vs {d}")
                    })?;
                    let missing = missing_positions(s, p, j).map_err(err)?.len();
                    check(missing == d, || {
                        format!("{s} p={p} j={j}: missing {missing}")
                    })?;
                }
                check(*fr == BigInt::from(counted.dim_n), || {
                    format!("{s} p={p}: N")
                })?;
            }
            if p >= 1 && s.index_count(p) <= 125 {
                for j in 0..=p {
                    let m = horn_map_matrix::<Rational>(s, p, j).map_err(err)?;
                    let nullity = m.cols() - m.rank();
                    check(nullity == counted.dim_r[j], || {
                        format!("{s} p={p} j={j}: ker Φ = {nullity}")
                    })?;
                }
                let z = stacked_face_nullity(s, p, 0..=p);
                let nn = stacked_face_nullity(s, p, 1..=p);
                check(z == counted.dim_z && nn == counted.dim_n, || {
                    format!("{s} p={p}: eliminated N/Z")
                })?;
                eliminated += 1;
            }
            if s.is_constant() {
                let (sz, sn) = stirling_forms(k, p);
                check(BigInt::from(sz.clone()) == fz, || {
                    format!("{s} p={p}: Stirling Z {sz}")
                })?;
                check(sn == counted.dim_n.into(), || {
                    format!("{s} p={p}: Stirling N {sn}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} shapes; {eliminated} degrees also by elimination over Q",
        family.len()
    ))
}

fn criterion_5() -> Outcome {
    let family = shape_family(4, 5);
    let mut rows = 0;
    for s in &family {
        let report = consistency_checks(s, s.k() + 2, 0).map_err(err)?;
        for c in &report.consistency {
            check(c.rank_n_next == c.rank_z_next + c.rank_z, || {
                format!("{s} p={}", c.p)
            })?;
            rows += 1;
        }
        check(report.pass, || format!("{s}: rank report failed"))?;
    }
    Ok(format!("{} shapes, {rows} relations", family.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut configs = 0;
    for s in [shape(&[3, 3]), shape(&[3, 3, 3]), shape(&[2, 3])] {
        for p in 1..=s.n() + 1 {
            let degenerate = degenerate_subspace::<Rational>(&s, p);
            for j in 0..=p {
                let structure = horn_structure_check::<Rational>(&s, p, j).map_err(err)?;
                check(structure.meet_r_d == 0 && structure.pass, || {
                    format!("{s} p={p} j={j}: R ∩ D")
                })?;
                let (_, r) = dstm::horn::missing_indices::<Rational>(&s, p, j).map_err(err)?;
                for _ in 0..200 {
                    let t = Tensor::<Rational>::random(&s, p, &mut rng);
                    let horn = horn_restrict(&t, j).map_err(err)?;
                    let filler = moore_filler(&horn).map_err(err)?;
                    check(horn_restrict(&filler, j).map_err(err)? == horn, || {
                        format!("{s} p={p} j={j}: not a filler")
                    })?;
                    check(degenerate.contains(filler.coeffs()).map_err(err)?, || {
                        format!("{s} p={p} j={j}: filler not degenerate")
                    })?;
                    let diff = t.sub(&filler).map_err(err)?;
                    check(r.contains(diff.coeffs()).map_err(err)?, || {
                        format!("{s} p={p} j={j}: difference outside R")
                    })?;
                }
                configs += 1;
            }
        }
    }
    Ok(format!("{configs} configurations x 200 horns"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in [shape(&[2, 2]), shape(&[3, 3]), shape(&[2, 3, 4])] {
        let c = contraction_check::<Rational>(&s, 4).map_err(err)?;
        check(c.pass, || {
            format!("{s}: ∂H + H∂ ≠ id at {:?}", c.first_failure)
        })?;
        check(
            equivariance_check::<Rational, _>(&s, 4, 100, &mut rng).map_err(err)?,
            || format!("{s}: equivariance"),
        )?;
        for r in invariant_subcomplex_checks::<Rational>(&s, 4).map_err(err)? {
            check(r.pass, || {
                format!("{s}: {} subcomplex betti {:?}", r.kind, r.betti)
            })?;
        }
    }
    Ok("(2,2), (3,3), (2,3,4) through p_max = 4".into())
}

fn criterion_8() -> Outcome {
    let mut pieces = 0;
    for s in [shape(&[2, 2]), shape(&[3, 3])] {
        let r = graded_collapse_check::<Rational>(&s, 3).map_err(err)?;
        check(r.pass, || format!("{s}: graded collapse"))?;
        pieces += r.pieces.len();
    }
    Ok(format!("{pieces} graded pieces contractible"))
}

fn criterion_9() -> Outcome {
    let mut seen = Vec::new();
    for (s, want) in [(shape(&[3, 3]), (2, 0)), (shape(&[3, 3, 3]), (12, 0))] {
        for j in 0..=s.n() {
            let r = horn_complex_check::<Rational>(&s, j).map_err(err)?;
            check((r.dim_h2, r.dim_h1) == want, || {
                format!("{s} j={j}: ({}, {})", r.dim_h2, r.dim_h1)
            })?;
        }
        seen.push(format!("{s}: {want:?}"));
    }
    Ok(seen.join(", "))
}

fn criterion_10() -> Outcome {
    let s = shape(&[3, 3]);
    let generic: Vec<usize> = (0..=2)
        .map(|p| generic_rank(&s, p, 8, 0, PRIME, false).map(|r| r.rank))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let t = trial_tensor::<Rational>(&s, 10, 0);
    check(is_generic(&t, &generic).map_err(err)?, || {
        "sampled tensor is not generic".into()
    })?;
    let h = homology_generated(&t, 3).map_err(err)?;
    check(h.direct[0] == 0, || {
        format!("generic H_0 = {}", h.direct[0])
    })?;

    let ones = Tensor::from_fn(&s, 2, |_| q(1));
    let h = homology_generated(&ones, 3).map_err(err)?;
    check(h.direct[0] == 1, || {
        format!("all-ones H_0 = {}", h.direct[0])
    })?;

    let cube = shape(&[3, 3, 3]);
    let e = Tensor::<Rational>::basis(&cube, 2, &MultiIndex(vec![0, 1, 2])).map_err(err)?;
    let h = homology_generated(&e, 3).map_err(err)?;
    check(h.direct == [0, 0, 1], || {
        format!("sphere betti {:?}", h.direct)
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let shapes = [
        shape(&[2, 2]),
        shape(&[3, 3]),
        shape(&[2, 3]),
        shape(&[3, 3, 3]),
    ];
    for trial in 0..20 {
        let s = &shapes[trial % shapes.len()];
        let sparse = trial % 2 == 1;
        let t = Tensor::from_fn(s, s.n(), |_| {
            if sparse {
                q(rng.gen_range(0..=1))
            } else {
                q(rng.gen_range(-3..=3))
            }
        });
        let h = homology_generated(&t, s.n() + 1).map_err(err)?;
        check(h.agree, || {
            format!("trial {trial} {s}: {:?} vs {:?}", h.direct, h.from_kernels)
        })?;
    }
    Ok("generic H_0 = 0, all-ones H_0 = 1, sphere (0,0,1), 20 random agree".into())
}

fn criterion_11() -> Outcome {
    let r = moduli_fingerprint(&shape(&[3, 3]), 25, 0).map_err(err)?;
    check(r.pass, || format!("{r:?}"))?;
    check(r.identical_pairs == 25, || {
        format!("identical pairs {}", r.identical_pairs)
    })?;
    let again = moduli_fingerprint(&shape(&[3, 3]), 25, 0).map_err(err)?;
    check(again == r, || "not seed-deterministic".into())?;
    Ok(format!(
        "25/25 pairs identical, {}/{} distinct diagonals separated, {} distinct K_0",
        r.separated_pairs, r.distinct_diagonal_pairs, r.distinct_k0
    ))
}

fn criterion_12() -> Outcome {
    let mut rows = 0;
    for s in [shape(&[2, 2]), shape(&[3, 3])] {
        let r = quotient_homology_check::<Rational>(&s, 5).map_err(err)?;
        check(r.pass, || format!("{s}: {:?}", r.rows))?;
        rows += r.rows.len();
    }
    Ok(format!("{rows} degrees with dim H_r(X/Z) = dim Z_(r-1)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("generic rank (2,2)", criterion_1),
        ("shape (3,3) realization", criterion_2),
        ("classification", criterion_3),
        ("rank formulas", criterion_4),
        ("rank consistency", criterion_5),
        ("Moore filler", criterion_6),
        ("contraction", criterion_7),
        ("spectral collapse", criterion_8),
        ("horn complex", criterion_9),
        ("generated homology", criterion_10),
        ("moduli fingerprint (3,3)", criterion_11),
        ("quotient homology", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
