use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma_series::catalog::{ConstantArgs, Method};
use gamma_series::numerics::ExactRational;

pub const PRECISION_ENV: &str = "GSERIES_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "gseries", version, about = "Series for generalized Euler constants: compute, bench and verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a constant and report convergence at checkpoints.
    Compute(ComputeArgs),
    /// Compare methods on one constant; CSV rows per method and checkpoint.
    Bench(BenchArgs),
    /// Run the exact-identity self checks.
    Verify(VerifyArgs),
    /// List the registered constants.
    List,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Constant name (see `gseries list`).
    pub constant: String,

    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=36))]
    pub base: u32,

    /// Digits after the decimal point.
    #[arg(long = "prec", env = PRECISION_ENV, default_value_t = 20, value_parser = clap::value_parser!(u32).range(6..=1000))]
    pub precision: u32,

    /// Somos parameter, an integer ≥ 2.
    #[arg(long, value_parser = parse_t)]
    pub t: Option<u64>,

    /// Argument of log_b; also b of gamma_ab.
    #[arg(long)]
    pub b: Option<u64>,

    /// Digit word for word_constant, written in the chosen base.
    #[arg(long)]
    pub word: Option<String>,

    /// a of gamma_ab.
    #[arg(long)]
    pub a: Option<u64>,

    /// z of gamma_ab as an exact rational such as -1 or 1/2.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub z: Option<ExactRational>,

    /// Derivative order l ∈ {0, 1} of gamma_ab.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1))]
    pub l: Option<u32>,

    /// Also write the output to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Sum sequentially instead of in parallel chunks.
    #[arg(long)]
    pub sequential: bool,
}

impl Common {
    pub fn constant_args(&self) -> ConstantArgs {
        ConstantArgs {
            b: self.b,
            t: self.t,
            word: self.word.clone(),
            a: self.a,
            l: self.l,
            z: self.z.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub common: Common,

    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub terms: u64,

    /// vacca, epsilon, complement, addison, integral or definition.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,

    /// Comma-separated term counts to report; powers of ten by default.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub checkpoints: Option<Vec<u64>>,

    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,

    #[arg(long, value_delimiter = ',', default_value = "vacca,addison", value_parser = parse_method)]
    pub methods: Vec<Method>,

    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000", value_parser = clap::value_parser!(u64).range(1..))]
    pub checkpoints: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// kernels, functional, digits, blocks, folding, literals or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

fn parse_t(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(t) if t >= 2 => Ok(t),
        _ => Err(format!("t must be an integer ≥ 2, got {s:?}")),
    }
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
        .map_err(|_| format!("unknown method {s:?}; expected vacca, epsilon, complement, addison, integral or definition"))
}
