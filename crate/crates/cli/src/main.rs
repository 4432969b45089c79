//! `fracdisc`: synthesize, tune and inspect fractional-order IIR filters.

mod args;
mod commands;
mod document;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Optimize(a) => commands::optimize(a),
        Command::Bode(a) => commands::bode(a),
        Command::Compare(a) => commands::compare(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracdisc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
