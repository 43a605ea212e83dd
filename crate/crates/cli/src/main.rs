use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use lhall::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version go to stdout with success; everything else is bad input.
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (out, err, code) = execute(&cli);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
