use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "padic-eisenstein", version, about = "Exact p-adic Fourier transforms and Eisenstein measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Amice transforms of measures on Z_p.
    #[command(subcommand)]
    Amice(AmiceCommand),
    /// Eisenstein moments of a curve y^2 = 4x^3 - g2 x - g3.
    #[command(subcommand)]
    Eis(EisCommand),
    /// Eisenstein moments on the Tate curve.
    #[command(subcommand)]
    Tate(TateCommand),
    /// p-adic zeta value by restriction of the Eisenstein measure to the units.
    Zeta(ZetaArgs),
    /// Finite-level Cartier duality on Z/p^n.
    #[command(subcommand)]
    Cartier(CartierCommand),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AmiceCommand {
    /// Amice series and moments of a measure.
    Transform(AmiceTransformArgs),
    /// Masses of the balls a + p^m Z_p from an Amice series.
    Invert(AmiceInvertArgs),
}

#[derive(Debug, Args)]
pub struct AmiceTransformArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 6)]
    pub prec: u32,
    #[arg(long, default_value_t = 64)]
    pub deg: i64,
    /// `dirac:A` for the point mass at an integer A, or `series:b0,b1,...`.
    #[arg(long)]
    pub measure: String,
    /// Report moments `∫ z^k` for k up to this bound.
    #[arg(long, default_value_t = 8)]
    pub kmax: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AmiceInvertArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 6)]
    pub prec: u32,
    #[arg(long, default_value_t = 64)]
    pub deg: i64,
    /// Amice coefficients b0,b1,...; later ones up to the degree are zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentMode {
    Formal,
    Rational,
    Both,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g3: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Reduce into Z/p^K; requires p > 3 and p not dividing n.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 6)]
    pub prec: u32,
}

#[derive(Debug, Subcommand)]
pub enum EisCommand {
    /// The depleted function x - n^2 [n]^* x in the formal parameter.
    XDepleted {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 64)]
        deg: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Moments by the formal-group pipeline, the lattice recursion, or both.
    Moments {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = MomentMode::Both)]
        mode: MomentMode,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum TateCommand {
    /// q-expansions of ((1+t)d/dt)^(k-2) x^(n) at t = 0, against the classical oracle.
    Moments {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        prec: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 8)]
        qorder: i64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 6)]
    pub prec: u32,
    /// Amice degree; by default the smallest that certifies the precision.
    #[arg(long)]
    pub deg: Option<i64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    ToFunction,
    ToMeasure,
}

#[derive(Debug, Subcommand)]
pub enum CartierCommand {
    /// Pascal transform between measures and functions on Z/p^n mod p^k.
    Transform {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 6)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = DirectionArg::ToFunction)]
        direction: DirectionArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Compatibility of the transforms across levels.
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 6)]
        prec: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// rings, series, formal, mahler, fourier, eisenstein or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}
