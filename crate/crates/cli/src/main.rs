//! `spgraph`: batch front end for the series-parallel subgraph statistics
//! library.

mod commands;
mod config;
mod error;
mod output;
mod tables;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spgraph_core::ring::with_precision;

use crate::commands::{CensusArgs, SolveArgs, SystemArgs, VerifyArgs};
use crate::config::{GlobalArgs, RunConfig};
use crate::error::{CliError, CliResult};
use crate::tables::{FamilyArg, LevelArg, SubgraphArg};

#[derive(Debug, Parser)]
#[command(name = "spgraph", version, about = "Subgraph counts in random series-parallel graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a network system as exact or floating series and write the
    /// network, block, connected and general series.
    Solve(SolveArgs),
    /// Enumeration constants of a graph family.
    Constants {
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Mean and variance constants of a subgraph count.
    Moments {
        #[arg(long, value_enum)]
        level: LevelArg,
        #[arg(long, value_enum)]
        subgraph: SubgraphArg,
    },
    /// Run the acceptance checks and print a table.
    Verify(VerifyArgs),
    /// Brute-force distribution of subgraph copies over small labelled graphs.
    Census(CensusArgs),
    /// Print a network system as JSON.
    DumpSystem(SystemArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig::from_args(&cli.global)?;
    with_precision(cfg.precision_digits, || match &cli.command {
        Command::Solve(a) => commands::solve(&cfg, a),
        Command::Constants { family } => commands::constants(&cfg, *family),
        Command::Moments { level, subgraph } => commands::moments(&cfg, *level, *subgraph),
        Command::Verify(a) => commands::verify(&cfg, a),
        Command::Census(a) => commands::run_census(&cfg, a),
        Command::DumpSystem(a) => commands::dump_system(&cfg, a),
    })
    .map_err(|e| CliError::Usage(e.to_string()))?
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
