use std::env;
use std::fs;

use dstm::contraction::{
    contraction_check, equivariance_check, graded_collapse_check, invariant_subcomplex_checks,
};
use dstm::enumeration::{classify_shape, consistency_checks};
use dstm::field::{default_prime_for_bits, Field};
use dstm::horn::{
    ell_free_isomorphism, horn_complex_check, horn_restrict, horn_structure_check, missing_indices,
    moore_filler, short_exact_dims,
};
use dstm::normalization::{
    degenerate_subspace, em_project, ez_check, normalized_subspace, quotient_homology_check,
};
use dstm::realization::{
    base_change_check, generic_rank, homology_generated, incidence_check, is_generic,
    kernel_sequence, moduli_fingerprint, realization_matrix, simplex_dim,
};
use dstm::tensor_io::{format_tensor, parse_tensor};
use dstm::{Error, Rational, Shape, Tensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::{
    ClassifyArgs, Command, Format, GenericRankArgs, ModuliArgs, RanksArgs, RealizeArgs, Suite,
    VerifyArgs,
};
use crate::report::{join_csv, Report, Section};

pub const PRIME_BITS_VAR: &str = "DSTM_PRIME_BITS";
pub const TRIALS_VAR: &str = "DSTM_TRIALS";
const DEFAULT_TRIALS: usize = 8;

pub enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidShape(_)
            | Error::DimensionMismatch { .. }
            | Error::DegreeMismatch { .. }
            | Error::ShapeMismatch
            | Error::MultiIndexOutOfBounds(_)
            | Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub pass: bool,
}

type Run<T> = Result<T, Failure>;

fn parse_shape(text: &str) -> Run<Shape> {
    text.parse::<Shape>()
        .map_err(|e| Failure::Input(format!("malformed shape {text:?}: {e}")))
}

fn default_trials() -> Run<usize> {
    match env::var(TRIALS_VAR) {
        Err(_) => Ok(DEFAULT_TRIALS),
        Ok(v) => {
            v.parse::<usize>().ok().filter(|&t| t > 0).ok_or_else(|| {
                Failure::Usage(format!("{TRIALS_VAR}={v} is not a positive integer"))
            })
        }
    }
}

fn default_prime() -> Run<u64> {
    let bits = match env::var(PRIME_BITS_VAR) {
        Err(_) => 31,
        Ok(v) => v
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("{PRIME_BITS_VAR}={v} is not an integer")))?,
    };
    default_prime_for_bits(bits)
        .ok_or_else(|| Failure::Usage(format!("{PRIME_BITS_VAR} must be 31, 32 or 61, got {bits}")))
}

fn render(report: &Report, format: Format, csv: impl FnOnce() -> String) -> Output {
    Output {
        text: match format {
            Format::Json => report.to_json(),
            Format::Csv => csv(),
        },
        pass: report.pass,
    }
}

pub fn dispatch(cli: &crate::args::Cli) -> Run<Output> {
    let cmd = &cli.command;
    match cmd {
        Command::Classify(a) => classify(cmd, a),
        Command::Ranks(a) => ranks(cmd, a),
        Command::Verify(a) => verify(cmd, a),
        Command::Realize(a) => realize(cmd, a),
        Command::GenericRank(a) => generic(cmd, a),
        Command::Moduli(a) => moduli(cmd, a),
    }
}

fn classify(cmd: &Command, a: &ClassifyArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    let c = classify_shape(&shape);
    let csv = format!(
        "shape,k,n,threshold,strict\n\"{}\",{},{},{},{}\n",
        shape.to_arg_string(),
        c.k,
        c.n,
        c.threshold,
        c.strict_n_hypergroupoid
    );
    let report = Report::new(cmd, None, vec![Section::new("classification", true, &c)]);
    Ok(render(&report, a.common.format, || csv))
}

fn ranks(cmd: &Command, a: &RanksArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    let p_max = a.pmax.unwrap_or(shape.k() + 2);
    let table = consistency_checks(&shape, p_max, a.j)?;
    let report = Report::new(cmd, None, vec![Section::new("ranks", table.pass, &table)]);
    Ok(render(&report, a.common.format, || table.to_csv()))
}

fn horn_sections(
    shape: &Shape,
    p_max: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Run<Vec<Section>> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        for j in 0..=p {
            let structure = horn_structure_check::<Rational>(shape, p, j)?;
            let (_, r) = missing_indices::<Rational>(shape, p, j)?;
            let mut filled = 0;
            for _ in 0..samples {
                let t = Tensor::<Rational>::random(shape, p, rng);
                let horn = horn_restrict(&t, j)?;
                let filler = moore_filler(&horn)?;
                if horn_restrict(&filler, j)? == horn && r.contains(t.sub(&filler)?.coeffs())? {
                    filled += 1;
                }
            }
            out.push(Section::new(
                format!("horn p={p} j={j}"),
                structure.pass && filled == samples,
                json!({ "structure": structure, "horns": samples, "filled": filled }),
            ));
        }
        let ell_free: Vec<bool> = (0..=p)
            .map(|l| ell_free_isomorphism::<Rational>(shape, p, l))
            .collect::<Result<_, _>>()?;
        out.push(Section::new(
            format!("ell-free p={p}"),
            ell_free.iter().all(|&b| b),
            &ell_free,
        ));
    }
    let n = shape.n();
    if n >= 1 {
        for j in 0..=n {
            let (r, z, dr) = short_exact_dims::<Rational>(shape, j)?;
            out.push(Section::new(
                format!("short-exact j={j}"),
                r == z + dr,
                json!({ "dim_R": r, "dim_Z": z, "dim_djR": dr }),
            ));
        }
    }
    if n >= 2 {
        for j in 0..=n {
            let c = horn_complex_check::<Rational>(shape, j)?;
            out.push(Section::new(format!("horn-complex j={j}"), c.pass, &c));
        }
    }
    Ok(out)
}

fn normalization_sections(
    shape: &Shape,
    p_max: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Run<Vec<Section>> {
    let mut out = Vec::new();
    for p in 0..=p_max {
        let ez = ez_check::<Rational>(shape, p)?;
        out.push(Section::new(
            format!("eilenberg-zilber p={p}"),
            ez.pass,
            &ez,
        ));
        let (n_p, d_p) = (
            normalized_subspace::<Rational>(shape, p),
            degenerate_subspace::<Rational>(shape, p),
        );
        let mut good = 0;
        for _ in 0..samples {
            let t = Tensor::<Rational>::random(shape, p, rng);
            let pi = em_project(&t)?;
            if em_project(&pi)? == pi
                && n_p.contains(pi.coeffs())?
                && d_p.contains(t.sub(&pi)?.coeffs())?
            {
                good += 1;
            }
        }
        out.push(Section::new(
            format!("projection p={p}"),
            good == samples,
            json!({ "samples": samples, "ok": good }),
        ));
    }
    let q = quotient_homology_check::<Rational>(shape, p_max.max(2))?;
    out.push(Section::new("quotient-homology", q.pass, &q));
    Ok(out)
}

fn contraction_sections(
    shape: &Shape,
    p_max: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Run<Vec<Section>> {
    let c = contraction_check::<Rational>(shape, p_max)?;
    let mut out = vec![Section::new("contraction", c.pass, &c)];
    let eq = equivariance_check::<Rational, _>(shape, p_max, samples, rng)?;
    out.push(Section::new(
        "equivariance",
        eq,
        json!({ "samples": samples }),
    ));
    for r in invariant_subcomplex_checks::<Rational>(shape, p_max)? {
        out.push(Section::new(format!("{}-subcomplex", r.kind), r.pass, &r));
    }
    Ok(out)
}

fn verify(cmd: &Command, a: &VerifyArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    if a.pmax == 0 {
        return Err(Failure::Usage("--pmax must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let want = |s: Suite| a.suite == s || a.suite == Suite::All;
    let mut sections = Vec::new();
    if want(Suite::Horn) {
        sections.extend(horn_sections(&shape, a.pmax, a.samples, &mut rng)?);
    }
    if want(Suite::Normalization) {
        sections.extend(normalization_sections(&shape, a.pmax, a.samples, &mut rng)?);
    }
    if want(Suite::Contraction) {
        sections.extend(contraction_sections(&shape, a.pmax, a.samples, &mut rng)?);
    }
    if want(Suite::Spectral) {
        let g = graded_collapse_check::<Rational>(&shape, a.pmax)?;
        sections.push(Section::new("graded-collapse", g.pass, &g));
    }
    if want(Suite::Ranks) {
        let r = consistency_checks(&shape, a.pmax, 0)?;
        sections.push(Section::new("ranks", r.pass, &r));
    }
    let report = Report::new(cmd, Some(a.seed), sections);
    Ok(render(&report, a.common.format, || report.to_csv()))
}

fn parse_primes(text: &str) -> Run<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("--primes: {s:?} is not an integer")))
        })
        .collect()
}

fn realize(cmd: &Command, a: &RealizeArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    let text = fs::read_to_string(&a.tensor)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", a.tensor.display())))?;
    let t =
        parse_tensor(&text).map_err(|e| Failure::Input(format!("{}: {e}", a.tensor.display())))?;
    if t.shape() != &shape {
        return Err(Failure::Input(format!(
            "tensor shape {} does not match --shape {shape}",
            t.shape()
        )));
    }
    let n = shape.n();
    if t.degree() != n {
        return Err(Failure::Input(format!(
            "tensor degree {} is not n = {n}",
            t.degree()
        )));
    }
    let p_max = a.pmax.unwrap_or(n);
    let trials = a.trials.map_or_else(default_trials, Ok)?;
    let prime = default_prime()?;

    let ks = kernel_sequence(&t, p_max)?;
    let ranks: Vec<usize> = (0..=p_max)
        .map(|p| realization_matrix(&t, p).map(|m| m.rank()))
        .collect::<Result<_, _>>()?;
    let incidence = incidence_check(&ks)?;
    let homology = homology_generated(&t, p_max.max(n + 1))?;
    let generic_ranks: Vec<usize> = (0..=p_max)
        .map(|p| generic_rank(&shape, p, trials, a.seed, prime, false).map(|r| r.rank))
        .collect::<Result<_, _>>()?;
    let generic = is_generic(&t, &generic_ranks)?;
    let summary = ks.summary();

    let mut sections = vec![
        Section::new(
            "tensor",
            true,
            serde_json::from_str::<serde_json::Value>(&format_tensor(&t)).expect("valid json"),
        ),
        Section::new(
            "kernel-sequence",
            true,
            json!({
                "columns": (0..=p_max).map(|p| simplex_dim(n, p)).collect::<Vec<_>>(),
                "ranks": ranks,
                "kernel": summary,
            }),
        ),
        Section::new("incidence", incidence, json!({ "holds": incidence })),
        Section::new("homology", homology.agree, &homology),
        Section::new(
            "generic-locus",
            true,
            json!({
                "generic": generic,
                "generic_ranks": generic_ranks,
                "trials": trials,
                "prime": prime,
            }),
        ),
    ];
    if let Some(primes) = &a.primes {
        let bc = base_change_check(&t, &parse_primes(primes)?)?;
        sections.push(Section::new("base-change", true, &bc));
    }
    let report = Report::new(cmd, Some(a.seed), sections);
    Ok(render(&report, a.common.format, || {
        let mut out = String::from("p,columns,rank,dimK\n");
        for p in 0..=p_max {
            out.push_str(&format!(
                "{p},{},{},{}\n",
                simplex_dim(n, p),
                ranks[p],
                summary.dims[p]
            ));
        }
        out.push_str("\np,basis\n");
        for (p, basis) in ks.subspaces.iter().enumerate() {
            for v in basis.basis() {
                let entries: Vec<String> = v.iter().map(Field::to_exact_string).collect();
                out.push_str(&format!("{p},{}\n", entries.join(",")));
            }
        }
        out.push_str(&format!("\nsummary,{}\n", report.pass));
        out
    }))
}

fn generic(cmd: &Command, a: &GenericRankArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    let trials = a.trials.map_or_else(default_trials, Ok)?;
    let prime = a.prime.map_or_else(default_prime, Ok)?;
    let r = generic_rank(&shape, a.p, trials, a.seed, prime, a.exact)?;
    let pass = r.exact_rank.is_none_or(|e| e == r.rank);
    let csv = format!(
        "p,columns,rank,kernel_dim,exact_rank,trials,seed,prime\n{},{},{},{},{},{},{},{}\n",
        r.p,
        r.columns,
        r.rank,
        r.kernel_dim,
        r.exact_rank
            .map_or_else(|| "-".to_string(), |e| e.to_string()),
        r.trials,
        r.seed,
        r.prime
    );
    let report = Report::new(
        cmd,
        Some(a.seed),
        vec![Section::new("generic-rank", pass, &r)],
    );
    Ok(render(&report, a.common.format, || csv))
}

fn moduli(cmd: &Command, a: &ModuliArgs) -> Run<Output> {
    let shape = parse_shape(&a.shape)?;
    let r = moduli_fingerprint(&shape, a.samples, a.seed)?;
    let csv = format!(
        "samples,seed,generic_ranks,identical_pairs,distinct_diagonal_pairs,separated_pairs,distinct_k0,scale_invariant,pass\n{},{},\"{}\",{},{},{},{},{},{}\n",
        r.samples,
        r.seed,
        join_csv(&r.generic_ranks),
        r.identical_pairs,
        r.distinct_diagonal_pairs,
        r.separated_pairs,
        r.distinct_k0,
        r.scale_invariant,
        r.pass
    );
    let report = Report::new(cmd, Some(a.seed), vec![Section::new("moduli", r.pass, &r)]);
    Ok(render(&report, a.common.format, || csv))
}
