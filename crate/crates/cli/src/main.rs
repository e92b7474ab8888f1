use std::io::Write;
use std::process::ExitCode;

use wellpoised_cli::{configure_workers, run};

fn main() -> ExitCode {
    if let Err(e) = configure_workers() {
        eprintln!("{}", e.to_json());
        return ExitCode::from(e.exit_code() as u8);
    }
    let outcome = run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
