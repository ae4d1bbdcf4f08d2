//! Command-line front end: argument types, dispatch and exit codes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
pub mod report;
pub mod tau;

#[derive(Debug, Parser)]
#[command(name = "hyperlap", version, about = "Spectra of hypergraph Laplacians with real coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex and hyperedge spectra, per connected component
    Spectrum(Common),
    /// Upper bounds on eigenvalues and the smallest nonzero eigenvalue
    Bounds(Common),
    /// Bipartition certificate for each connected component
    Bipartite(Common),
    /// Twins, duplicates, two-vertex eigenpairs and an optional involution
    Symmetries(Common),
    /// Harmonic functions, balanced fluxes and elementary modes
    Kernel(Common),
    /// Quotient hypergraph of an involution given by --tau
    Quotient(Common),
    /// Runs every theorem check; exits 1 on a violation
    Check(Common),
    /// Writes a random hypergraph document
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Hypergraph document
    #[arg(long, short)]
    pub input: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Eigenvalues with absolute value at most this are reported as zero
    /// [default: 1e-9 · N]
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Involution as vertex and hyperedge transpositions, e.g. `v1=v3;h1=h2`
    #[arg(long)]
    pub tau: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Planted {
    Twins,
    AntiTwins,
    Duplicates,
    Involution,
    Bipartite,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub vertices: usize,
    #[arg(long, default_value_t = 6)]
    pub hyperedges: usize,
    #[arg(long, default_value_t = 2)]
    pub min_cardinality: usize,
    #[arg(long, default_value_t = 3)]
    pub max_cardinality: usize,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub min_coefficient: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub max_coefficient: f64,
    /// Structure to plant; twins and duplicates add one vertex
    #[arg(long, value_enum)]
    pub planted: Option<Planted>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<hyperlap::Error> for CliError {
    fn from(e: hyperlap::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    /// Set by `check` when some theorem check failed.
    pub violation: bool,
    /// Extra lines for stderr.
    pub diagnostics: Vec<String>,
    pub output: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Generate(args) => commands::generate(args),
        Command::Spectrum(c) => commands::spectrum(c),
        Command::Bounds(c) => commands::bounds(c),
        Command::Bipartite(c) => commands::bipartite(c),
        Command::Symmetries(c) => commands::symmetries(c),
        Command::Kernel(c) => commands::kernel(c),
        Command::Quotient(c) => commands::quotient(c),
        Command::Check(c) => commands::check(c),
    }
}

/// Runs and writes the outcome; returns the process exit code.
pub fn main_with(cli: &Cli) -> u8 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("hyperlap: {e}");
            return e.exit_code();
        }
    };
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    match &outcome.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("hyperlap: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.violation {
        1
    } else {
        0
    }
}
