//! Evidence-fusion scenario runner.

mod commands;
mod presets;
mod report;
mod scenario;

use clap::{Parser, Subcommand};
use commands::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "evifuse",
    version,
    about = "Fuse evidence expressed as possibility curves over a real frame"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse all sources of a scenario file; write curves and a report
    Fuse {
        /// Scenario JSON file
        scenario: PathBuf,
        /// Output directory for CSV curves and reports
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also cross-check against the exact combiner at this many levels
        #[arg(long)]
        oracle: Option<usize>,
        /// Fail (exit 4) when the agreement is not derivable
        #[arg(long)]
        strict: bool,
    },
    /// Compare the curve agreement with the exact combiner at depth n
    OracleCheck {
        /// Scenario JSON file with exactly two consonant sources
        scenario: PathBuf,
        /// Discretization levels per source
        #[arg(long)]
        n: usize,
        /// Allowed |agreement - (1 - k_n)|
        #[arg(long)]
        tol: f64,
    },
    /// Run a built-in scenario: speeding, speeding-agree, speeding-conflict
    Preset {
        name: String,
        /// Output directory for CSV curves, reports and the scenario itself
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also cross-check against the exact combiner at this many levels
        #[arg(long)]
        oracle: Option<usize>,
        /// Fail (exit 4) when the agreement is not derivable
        #[arg(long)]
        strict: bool,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fuse {
            scenario,
            out,
            oracle,
            strict,
        } => {
            let name = scenario
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "scenario".into());
            let file = commands::load_scenario(&scenario)?;
            commands::run_fuse(&file, &name, &out, oracle, strict, false)
        }
        Command::OracleCheck { scenario, n, tol } => {
            let file = commands::load_scenario(&scenario)?;
            commands::run_oracle_check(&file, n, tol)
        }
        Command::Preset {
            name,
            out,
            oracle,
            strict,
        } => {
            let file = presets::preset(&name).ok_or_else(|| {
                CliError::Malformed(format!(
                    "unknown preset '{name}'; available: {}",
                    presets::PRESET_NAMES.join(", ")
                ))
            })?;
            commands::run_fuse(&file, &name, &out, oracle, strict, true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
