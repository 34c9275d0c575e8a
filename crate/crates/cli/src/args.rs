use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "rowpade", version, about = "Padé, incomplete Padé and Hermite-Padé row sequences")]
pub struct Cli {
    /// Worker threads for per-n computations (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Computes a single approximant.
    Approximate(ApproximateArgs),
    /// Builds a row sequence and its convergence diagnostics.
    Row(RowArgs),
    /// Runs a built-in verification suite.
    Verify(VerifyArgs),
    /// Lists the catalog systems.
    ListExamples(ListArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Series-spec JSON file, or `catalog:NAME`.
    #[arg(long)]
    pub series: String,
    /// Catalog parameter, `key=value` (repeatable or comma separated).
    #[arg(long = "params", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Multi-index of a Hermite-Padé row, e.g. "1,1".
    #[arg(long = "multi-index", conflicts_with_all = ["m", "mstar"])]
    pub multi_index: Option<String>,
    /// Denominator degree of a scalar row.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of binding conditions of an incomplete scalar row (default: m).
    #[arg(long)]
    pub mstar: Option<usize>,
    /// Arithmetic: exact or float.
    #[arg(long, default_value = "exact")]
    pub mode: String,
    /// Working precision of floating arithmetic and evaluations.
    #[arg(long = "precision-bits", default_value_t = rowpade::numerics::DEFAULT_PRECISION)]
    pub precision_bits: u32,
    /// Report path; a CSV sidecar is written next to it. Default: stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ApproximateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RowArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Inclusive range `a:b`.
    #[arg(long = "n-range")]
    pub n_range: String,
    /// Exclusion parameter for compacts that do not set their own.
    #[arg(long, default_value_t = rowpade::rows::compact::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Compact for sup-norm errors, e.g. "circle:r=1,points=512" (repeatable).
    #[arg(long)]
    pub compact: Vec<String>,
    /// Points for Δ, δ_j and μ, e.g. "1,-1,3" or "2+1i".
    #[arg(long = "indicator-points")]
    pub indicator_points: Option<String>,
    /// Reference denominator: "roots:1,2" or ascending "coeffs:-1,3/2,-1/2".
    #[arg(long = "target-denominator")]
    pub target_denominator: Option<String>,
    /// Margin below 1 for counting a δ_j as converging.
    #[arg(long = "decision-tol", default_value_t = rowpade::rows::DECISION_TOL)]
    pub decision_tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// exact-denominators, radius, indicators, rates, properties or all.
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ListArgs {
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}
