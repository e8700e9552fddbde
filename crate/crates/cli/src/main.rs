use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use poset_radius_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    // usage errors share the input-error status; 2 means budget exhausted
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
