//! Thin command-line front end over the library; see the crate docs and
//! the examples directory for library usage.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chaplygin_piston::driver::{self, parse_value_list, Task};
use chaplygin_piston::{Direction, Error};

#[derive(Parser)]
#[command(
    name = "chaplygin-piston",
    about = "Piston problem for a generalized Chaplygin gas: exact solutions, \
             weak-form verification, and finite-volume cross-validation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Advance,
    Recede,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Advance => Direction::Advance,
            DirectionArg::Recede => Direction::Recede,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured scenarios; write summary JSON and profile CSVs.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve and verify against the weak formulations (and the
    /// finite-volume scheme when `verify_fvm = true`).
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Cross-validate the configured scenarios with the finite-volume
    /// scheme at three grid resolutions.
    Fvm {
        #[arg(long)]
        config: PathBuf,
    },
    /// Classification map over a (gamma, mach) grid.
    PhaseDiagram {
        /// Gamma grid: a single value, a comma list, or a range a:b:n.
        #[arg(long)]
        gamma: String,
        /// Mach grid in the same formats.
        #[arg(long)]
        mach: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Advance)]
        direction: DirectionArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // exit 2: the request itself was malformed
                Error::Config { .. } | Error::OutOfRange { .. } => ExitCode::from(2),
                // exit 1: a valid request that could not be satisfied
                _ => ExitCode::from(1),
            }
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve { config } => run_task(&config, Task::Solve),
        Command::Verify { config } => run_task(&config, Task::Verify),
        Command::Fvm { config } => run_task(&config, Task::Fvm),
        Command::PhaseDiagram {
            gamma,
            mach,
            out,
            direction,
        } => {
            let gammas = parse_value_list(&gamma)
                .map_err(|m| Error::Config { line: 0, message: format!("--gamma: {m}") })?;
            let machs = parse_value_list(&mach)
                .map_err(|m| Error::Config { line: 0, message: format!("--mach: {m}") })?;
            let csv = driver::phase_diagram_csv(&gammas, &machs, direction.into())?;
            driver::write_atomic(&out, &csv)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_task(config: &Path, task: Task) -> Result<ExitCode, Error> {
    let cfg = driver::parse_config(config)?;
    let outcome = driver::run(&cfg, task)?;
    for path in &outcome.artifacts {
        println!("wrote {}", path.display());
    }
    if outcome.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in &outcome.failures {
            eprintln!("verification failed: {failure}");
        }
        Ok(ExitCode::from(1))
    }
}
