//! `polyzero` command-line front end.
//!
//! Exit codes: 0 all selected claims pass, 1 a claim fails, 2 partial result
//! or numerical non-convergence, 64 invalid configuration.

mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Invalid as u8),
            };
        }
    };
    let exit = match commands::run(cli) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("polyzero: {}", e.message);
            e.exit
        }
    };
    ExitCode::from(exit as u8)
}
