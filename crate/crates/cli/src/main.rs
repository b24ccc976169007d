use std::io::{stderr, stdout};
use std::process::ExitCode;

use fusionkit_cli::{configure_threads, run_from_args, EXIT_PARSE};

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_PARSE as u8);
    }
    let code = run_from_args(
        std::env::args_os(),
        &mut stdout().lock(),
        &mut stderr().lock(),
    );
    ExitCode::from(code as u8)
}
