//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "curvebound",
    version,
    about = "Exact obstructions for cuspidal plane curves"
)]
pub struct Cli {
    /// key=value file whose entries stand in for missing flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every obstruction on one hypothetical curve.
    Check(CheckArgs),
    /// Evaluate all one-pair candidates over a degree range.
    Search(SearchArgs),
    /// Genus-one classification of curves with one Puiseux pair.
    Classify(ClassifyArgs),
    /// Gaps, conductor and Alexander polynomial of a semigroup.
    Semigroup(SemigroupArgs),
    /// Spectrum of a torus-type singularity, optionally against a degree.
    Spectrum(SpectrumArgs),
    /// Correction terms of the boundary of a curve neighbourhood.
    Dinv(DinvArgs),
    /// Fibonacci numbers, Fibonacci triples and Pell degrees.
    Fib(FibArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SpectrumModeArg {
    #[default]
    Ssl,
    Full,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

/// A semigroup given by generators, with an optional `M̄` after a colon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub generators: Vec<u64>,
    pub mbar: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SingularityArgs {
    /// Puiseux pair `p,q`; repeat for several singular points.
    #[arg(long = "pair", value_name = "P,Q", value_parser = parse_pair)]
    pub pairs: Vec<(u64, u64)>,

    /// Semigroup generators `a,b,c[:mbar]`; repeat for several singular points.
    #[arg(long = "generators", value_name = "A,B,..[:MBAR]", value_parser = parse_generators)]
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub degree: u64,

    #[arg(long)]
    pub genus: u64,

    #[command(flatten)]
    pub sings: SingularityArgs,

    /// Also evaluate the correction-term form.
    #[arg(long)]
    pub dinv: bool,

    /// Stop at the first failing check.
    #[arg(long)]
    pub early_exit: bool,

    #[arg(long, value_enum, default_value_t)]
    pub spectrum_mode: SpectrumModeArg,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub genus: u64,

    /// `a..b` (inclusive) or a single degree.
    #[arg(long, value_name = "A..B", value_parser = parse_range)]
    pub degree: (u64, u64),

    /// Comma-separated subset of theorem_main, bmy, multiplicity, spectrum.
    #[arg(long, default_value = "theorem_main,bmy")]
    pub filters: String,

    #[arg(long)]
    pub threads: Option<usize>,

    /// Emit every evaluated candidate, not just survivors.
    #[arg(long)]
    pub all: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 33)]
    pub max_degree: u64,

    #[arg(long)]
    pub threads: Option<usize>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    #[command(flatten)]
    pub sings: SingularityArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "pair", value_name = "P,Q", value_parser = parse_pair, required = true)]
    pub pairs: Vec<(u64, u64)>,

    /// Compare against `Σ_{d,d}` for this degree.
    #[arg(long)]
    pub degree: Option<u64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DinvArgs {
    #[arg(long)]
    pub degree: u64,

    #[arg(long)]
    pub genus: u64,

    #[command(flatten)]
    pub sings: SingularityArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FibArgs {
    /// Print `φ_n`.
    #[arg(long)]
    pub n: Option<u64>,

    /// Print the `j`-th Fibonacci triple `(p,q;d)`.
    #[arg(long)]
    pub triple: Option<u64>,

    /// Print every `d ≤ N` with `5d² + 4` a square.
    #[arg(long, value_name = "N")]
    pub pell: Option<u64>,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not a non-negative integer: {s:?}"))
}

pub fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    Ok((parse_u64(p)?, parse_u64(q)?))
}

pub fn parse_generators(s: &str) -> Result<GeneratorSpec, String> {
    let (gens, mbar) = match s.split_once(':') {
        Some((g, m)) => (g, Some(parse_u64(m)?)),
        None => (s, None),
    };
    let generators = gens
        .split(',')
        .map(parse_u64)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSpec { generators, mbar })
}

pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    match s.split_once("..") {
        Some((a, b)) => Ok((parse_u64(a)?, parse_u64(b.trim_start_matches('='))?)),
        None => parse_u64(s).map(|d| (d, d)),
    }
}
