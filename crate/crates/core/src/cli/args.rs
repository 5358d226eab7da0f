use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ostrovsky", version, about = "Integrability test, traveling-wave classification and spectral simulation")]
pub struct Cli {
    /// Report format; defaults to json, or csv for scans and simulations.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized initial data.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Formal recursion operator locality test.
    Integrability(IntegrabilityArgs),
    /// Classify the traveling-wave linearization.
    Waves(WavesArgs),
    /// Run the spectral simulator and check the conservation laws.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct IntegrabilityArgs {
    /// Alias (ostrovsky, kdv), a file path, or equation text.
    #[arg(long)]
    pub equation: String,
    /// Highest phi_m computed
    #[arg(long, default_value_t = 2)]
    pub max_order: usize,
    /// Number of eta^-n terms checked per coefficient
    #[arg(long, default_value_t = 6)]
    pub depth: i64,
    /// Highest nonlinear degree accepted by the parser
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Compute every order even after an obstruction.
    #[arg(long)]
    pub exhaustive: bool,
    /// Substitute a rational value for a parameter, e.g. `gamma=0`.
    #[arg(long = "specialize", value_name = "NAME=VALUE")]
    pub specialize: Vec<String>,
}

#[derive(Debug, Args)]
pub struct WavesArgs {
    /// Dispersion coefficient; use with --gamma and --c
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Rotation parameter
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Wave speed
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// A value, or `lo:hi` with `--scan`.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Same form as --p
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Classify every point of a grid over the --p and --q ranges
    #[arg(long)]
    pub scan: bool,
    /// Scan grid as `NPxNQ`.
    #[arg(long, default_value = "41x41")]
    pub grid: String,
    /// Threshold for treating a discriminant or root as zero
    #[arg(long, default_value_t = crate::waves::DEFAULT_TOL)]
    pub tol: f64,
    /// Classify with exact rational arithmetic (values like `1/3`).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override a configuration key.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Write binary field snapshots here.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
}
