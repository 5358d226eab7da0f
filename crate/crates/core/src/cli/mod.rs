//! Command-line driver.

mod args;
mod integrability;
mod manifest;
mod simulate;
mod waves;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use manifest::{RunManifest, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OBSTRUCTION: i32 = 10;
pub const EXIT_DRIFT: i32 = 11;
pub const EXIT_BLOW_UP: i32 = 12;

/// Failure that maps to the usage exit code.
#[derive(Debug)]
pub(crate) struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// What a command produced: the report body, diagnostics and exit code.
pub(crate) struct Outcome {
    pub body: Vec<u8>,
    pub notes: Vec<String>,
    pub code: i32,
}

/// Runs the driver with `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Integrability(a) => integrability::run(a, &cli, &argv),
        Command::Waves(a) => waves::run(a, &cli, &argv),
        Command::Simulate(a) => simulate::run(a, &cli, &argv),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => stdout.write_all(&outcome.body),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

pub fn main_with_args() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
