//! Command-line front end for `gailrs`: one subcommand per solver, a JSON
//! report per run, and a runner for the built-in fixture table.
//!
//! Exit codes: 0 for a clean run, 2 when a solver sets a warning flag, 1 for
//! bad arguments or configuration, 3 when `examples` has a failing fixture.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod report;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command};
pub use commands::execute;
pub use fixtures::{run_doc_examples, Fixture, FIXTURES};
pub use report::{ExamplesReport, RunReport, Truth};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_WARN: i32 = 2;
pub const EXIT_EXAMPLES_FAILED: i32 = 3;

fn write_json(path: &Option<String>, text: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match path.as_deref() {
        None => Ok(()),
        Some("-") => writeln!(out, "{text}"),
        Some(p) => std::fs::write(p, format!("{text}\n")),
    }
}

fn summary(rep: &RunReport, out: &mut dyn Write) -> std::io::Result<()> {
    let d = &rep.diagnostics;
    match rep.estimate.as_f64() {
        Some(q) => writeln!(out, "{:<12} {q:.10}", rep.command)?,
        None => writeln!(out, "{:<12} {}", rep.command, rep.estimate)?,
    }
    writeln!(out, "  n_evals    {}", d.n_evals)?;
    writeln!(out, "  iterations {}", d.iterations)?;
    writeln!(out, "  errest     {:e}", d.errest)?;
    writeln!(out, "  exit_flags {}", d.exit_flags.0)?;
    Ok(())
}

/// Runs the command line `argv` (program name first), writing the table to
/// `out` and messages to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if help {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if help { EXIT_OK } else { EXIT_CONFIG };
        }
    };
    let cmd = cli.command;
    let io = |r: std::io::Result<()>, err: &mut dyn Write| match r {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write report: {e}");
            false
        }
    };
    if let Command::Examples(a) = &cmd {
        let rep = run_doc_examples(a.seed);
        for r in &rep.reports {
            let est = r.scalar().map(|q| format!("{q:.6}")).unwrap_or_else(|| "-".into());
            let verdict = if r.pass == Some(true) { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict}  {:<30} {est:>14}  flags {}",
                r.fixture.as_deref().unwrap_or(""),
                r.diagnostics.exit_flags.0
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", rep.passed, rep.failed);
        if !io(write_json(&a.output.json, &rep.to_json(), out), err) {
            return EXIT_CONFIG;
        }
        return if rep.failed > 0 { EXIT_EXAMPLES_FAILED } else { EXIT_OK };
    }
    match execute(&cmd) {
        Ok(rep) => {
            let _ = summary(&rep, out);
            if !io(write_json(&cmd.output().json, &rep.to_json(), out), err) {
                return EXIT_CONFIG;
            }
            if rep.diagnostics.exit_flags.is_clean() {
                EXIT_OK
            } else {
                EXIT_WARN
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}
