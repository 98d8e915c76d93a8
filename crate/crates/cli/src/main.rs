use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use polarcg_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    }
    let (outcome, diagnostic) = run(&cli);
    let mut out = std::io::stdout().lock();
    if out
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    if let Some(d) = diagnostic {
        eprintln!("{d}");
    }
    ExitCode::from(outcome.code as u8)
}
