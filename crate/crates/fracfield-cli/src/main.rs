//! fracfield: spectral solvers for fractional Cauchy problems on compact
//! manifolds and coordinate-changed Gaussian random-field simulation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fracfield_cli::commands;

#[derive(Parser)]
#[command(name = "fracfield", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a deterministic Cauchy problem from a config file.
    Solve { config: PathBuf },
    /// Synthesize and evolve random fields from a config file.
    Field { config: PathBuf },
    /// Run an invariant suite: specfun, subordinate, manifold, solver,
    /// fields, or all.
    Validate {
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve { config } => commands::solve::run(config).map(|_| true),
        Command::Field { config } => commands::field::run(config).map(|_| true),
        Command::Validate { suite, seed, out } => {
            commands::validate::run(suite, *seed, out.as_deref())
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
