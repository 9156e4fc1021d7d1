//! `abpauli`: spectra, kernels, eigenfunctions, scattering tables, symmetry
//! checks and Dirac boundary conditions from the command line.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser)]
#[command(name = "abpauli", version, about = "Self-adjoint extensions of the Aharonov-Bohm Pauli operator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Flux (reduced to its fractional part).
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Extension: friedrichs, krein, theta=<c>, beta=<c>, inline JSON or a JSON file.
    #[arg(long, default_value = "friedrichs")]
    pub ext: String,
    /// Also write the parsed extension as JSON to this path.
    #[arg(long)]
    pub save_ext: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for grid evaluation (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Negative eigenvalues, zero-energy resonances and exceptional points.
    Spectrum(commands::SpectrumArgs),
    /// Scattering amplitudes and cross sections over a grid of directions.
    Scatter(commands::ScatterArgs),
    /// Eigenfunctions, bound states or single layers on a polar grid.
    Eigfun(commands::EigfunArgs),
    /// Resolvent kernel on a polar grid against a fixed source point.
    Kernel(commands::KernelArgs),
    /// Classify a symmetry transformation (S, T).
    Symcheck(commands::SymcheckArgs),
    /// Dirac boundary traces and the square-domain charge conditions.
    Dirac(commands::DiracArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Scatter(a) => commands::scatter(&a),
        Command::Eigfun(a) => commands::eigfun(&a),
        Command::Kernel(a) => commands::kernel(&a),
        Command::Symcheck(a) => commands::symcheck(&a),
        Command::Dirac(a) => commands::dirac(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abpauli: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
