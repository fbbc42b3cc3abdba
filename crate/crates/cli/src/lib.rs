//! Command-line front end: argument parsing, commands and run reports.
//!
//! [`run_command`] is the whole program minus process I/O, so it can be
//! driven directly from tests.

mod args;
mod commands;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command};
pub use report::{witness_text, RunReport};

pub const EXIT_OK: i32 = 0;
/// A divisible coordinate under every hypothesis.
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Usage, I/O, syntax and shape errors. Nothing is written to stdout.
pub const EXIT_INPUT: i32 = 2;
/// The input parsed but violates a hypothesis of the pipeline.
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// `None` for usage output and input errors.
    pub report: Option<RunReport>,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new(), report: None }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text, report: None },
            };
        }
    };
    let result = match &cli.command {
        Command::Parse(a) => commands::parse(a),
        Command::Jacobian(a) => commands::jacobian_cmd(a),
        Command::FromPotential(a) => commands::from_potential(a),
        Command::ToPotential(a) => commands::to_potential(a),
        Command::CheckMap(a) => commands::check_map(a),
        Command::Irreducible(a) => commands::irreducible(a),
        Command::Replay(a) => commands::replay(a),
        Command::Gen(a) => commands::gen(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(run) => Outcome {
            code: run.report.exit_status,
            stdout: if cli.json { run.report.to_json() } else { run.text },
            stderr: String::new(),
            report: Some(run.report),
        },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message), report: None },
    }
}
