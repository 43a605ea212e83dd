//! Command layer of the `lhall` binary: argument grammar, dispatch and report rendering.

pub mod args;
pub mod commands;
pub mod report;

use std::time::Instant;

pub use args::Cli;
pub use commands::{run, Failure, Outcome};
pub use report::Report;

/// Runs a parsed command line and returns `(stdout, stderr, exit code)`.
pub fn execute(cli: &Cli) -> (String, String, i32) {
    let common = cli.command.common();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut outcome) => {
            if !common.no_timing {
                outcome.report.elapsed_ms = Some(start.elapsed().as_millis().to_string());
            }
            (
                outcome.report.render(common.format),
                String::new(),
                outcome.exit_code(),
            )
        }
        Err(f) => (String::new(), format!("lhall: {f}\n"), f.exit_code()),
    }
}
