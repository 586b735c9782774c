//! `wassci` command-line driver.
//!
//! Exit codes: 0 success, 2 degenerate LP refused, 3 usage, parse or input
//! errors, 4 numerical failure.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use wassci::Error;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate { .. } => 2,
        Error::Parse { .. }
        | Error::Domain(_)
        | Error::DimensionMismatch(_)
        | Error::InvalidInstance(_)
        | Error::NotPositiveSemidefinite(_)
        | Error::Io(_) => 3,
        Error::SingularMatrix { .. }
        | Error::SingularBasis
        | Error::Infeasible
        | Error::NumericalFailure(_)
        | Error::DegenerateDirection { .. }
        | Error::EmptyRegion(_)
        | Error::NumericalUnderflow(_)
        | Error::RootNotBracketed { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let res = match &cli.command {
        Command::Ci(a) => commands::ci(a),
        Command::SimulateCoverage(a) => commands::simulate("coverage", a),
        Command::SimulateLength(a) => commands::simulate("length", a),
        Command::Benchmark(a) => commands::benchmark(a),
        Command::Robustness(a) => commands::robustness(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
