use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "dstm",
    version,
    about = "Diagonal simplicial tensor modules over exact fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Command {
    /// Decide whether the shape is a strict algebraic n-hypergroupoid.
    Classify(ClassifyArgs),
    /// Rank table of horn kernels, normalized chains and normalized cycles.
    Ranks(RanksArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Realization matrices and kernel sequence of a degree-n tensor.
    Realize(RealizeArgs),
    /// Generic rank of the realization matrix by random sampling.
    GenericRank(GenericRankArgs),
    /// Kernel-sequence fingerprint of the (3,3) moduli.
    Moduli(ModuliArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Horn,
    Normalization,
    Contraction,
    Spectral,
    Ranks,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    /// Comma-separated shape, e.g. 3,3.
    #[arg(long)]
    pub shape: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct RanksArgs {
    #[arg(long)]
    pub shape: String,
    /// Highest degree; defaults to k + 2.
    #[arg(long)]
    pub pmax: Option<usize>,
    /// Omitted face for the horn kernel column.
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub shape: String,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 3)]
    pub pmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random horns per configuration and tensors for equivariance.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct RealizeArgs {
    #[arg(long)]
    pub shape: String,
    /// Tensor file: {"shape": [..], "degree": n, "entries": [..]}.
    #[arg(long)]
    pub tensor: PathBuf,
    /// Highest degree of the kernel sequence; defaults to n.
    #[arg(long)]
    pub pmax: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trials for the generic ranks; defaults to DSTM_TRIALS or 8.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated primes for base-change comparison.
    #[arg(long)]
    pub primes: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct GenericRankArgs {
    #[arg(long)]
    pub shape: String,
    #[arg(long)]
    pub p: usize,
    /// Defaults to DSTM_TRIALS or 8.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampling prime; defaults to the DSTM_PRIME_BITS prime (31 bits).
    #[arg(long)]
    pub prime: Option<u64>,
    /// Also run fraction-free elimination over Z[v] (small cases only).
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ModuliArgs {
    #[arg(long, default_value = "3,3")]
    pub shape: String,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}
