use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nabla-ab", version, about = "Nabla discrete fractional calculus toolkit")]
pub struct Cli {
    /// Truncation tolerance for adaptive series.
    #[arg(long, global = true, env = "NABLA_AB_TOL", default_value_t = 1e-12)]
    pub tol: f64,

    /// Maximum number of series terms.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub k_max: usize,

    /// Normalization function B(alpha).
    #[arg(long, global = true, value_enum, default_value_t = BNorm::One)]
    pub b_norm: BNorm,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BNorm {
    One,
    AbStandard,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply an operator to a signal CSV (`t,value`).
    Apply(ApplyArgs),
    /// Evaluate a discrete Mittag-Leffler function.
    Ml(MlArgs),
    /// Check the discrete Laplace transform rules numerically.
    LaplaceCheck(LaplaceArgs),
    /// Solve the iterated AB fractional difference equation by power series.
    Solve(SolveArgs),
    /// Run an identity verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    FracSum,
    AbSum,
    Abc,
    Abr,
    Iterated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long, value_enum)]
    pub op: Op,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    pub side: SideArg,
    /// Kernel order; the order of the sum for `frac-sum`.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Iteration exponent for `iterated`.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub mu: f64,
    /// Input signal CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output CSV (stdout when omitted).
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
    /// JSON metadata file (stderr when omitted).
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MlArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Argument v (a nonnegative integer).
    #[arg(long)]
    pub v: u64,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// Evaluation points in (0, 2).
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 0.8, 1.2])]
    pub z: Vec<f64>,
    /// Order of the fractional-sum rule.
    #[arg(long, default_value_t = 0.5)]
    pub nu: f64,
    /// Kernel order for the iterated-operator transform check.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Iteration exponent for the iterated-operator transform check.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub mu: f64,
    /// Tolerance for the reported gaps.
    #[arg(long, default_value_t = 1e-8)]
    pub check_tol: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// JSON file with {alpha, mu, A, b_coeffs, n_terms, t_max}; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Coefficient A of the equation.
    #[arg(long = "coef-a", allow_negative_numbers = true)]
    pub coef_a: Option<f64>,
    /// Right-hand side coefficients b_0, b_1, …
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub b_coeffs: Option<Vec<f64>>,
    #[arg(long)]
    pub n_terms: Option<usize>,
    #[arg(long)]
    pub t_max: Option<u64>,
    /// Residual tolerance.
    #[arg(long)]
    pub residual_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of frac-sum, mittag-leffler, ab, iterated-abr, semigroup, ibp,
    /// laplace, transform, solver, all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Restrict alpha sweeps to one value.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}
