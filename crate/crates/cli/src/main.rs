use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let start = Instant::now();
    let outcome = yagzhev_cli::run_command(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    // timing stays out of the report so reports are reproducible
    if outcome.report.is_some() {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(outcome.code as u8)
}
