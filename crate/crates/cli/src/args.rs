use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "subforge", version, about = "Certified principal-submatrix selection and Gauss–Lucas checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Select a principal submatrix and certify its extreme eigenvalue.
    Select(SelectArgs),
    /// Evaluate a closed-form bound.
    Bounds(BoundsArgs),
    /// Check a derivative-root geometry bound on a complex polynomial.
    #[command(name = "gauss-lucas")]
    GaussLucas(GaussLucasArgs),
    /// Run a seeded invariant suite against the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Maxroot,
    Smax,
    TwoSided,
    Invertible,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Matrix file: JSON `{"n","re","im"}` or Matrix Market.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, conflicts_with = "keep_frac")]
    pub keep: Option<usize>,
    #[arg(long)]
    pub keep_frac: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Potential level for `smax`: a positive number or `auto`.
    #[arg(long, default_value = "auto")]
    pub phi: String,
    /// Fraction of the stable rank to keep (`invertible`).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Where to write the certificate JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Mrr,
    Zd1,
    Zd3,
    Kastza,
    Bt,
    Msr,
    Hm,
    Refined,
    ShiftedMin,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub formula: Formula,
    /// Comma-separated `key=value` pairs, e.g. `alpha=0.5,c=0.75`.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Area,
    Spread,
    Disc,
    Chain,
    Pereira,
}

#[derive(Debug, Args)]
pub struct GaussLucasArgs {
    /// Polynomial JSON `{"coeffs_re": [...], "coeffs_im": [...]}`.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long, value_enum)]
    pub check: Check,
    /// Chain length for `chain`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub emit_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thompson,
    Interlace,
    Existence,
    Appendix,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Trials per randomized suite; each suite has its own default.
    #[arg(long)]
    pub trials: Option<usize>,
}
