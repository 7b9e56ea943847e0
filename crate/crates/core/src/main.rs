use std::process::ExitCode;

use clap::Parser;
use norm_lab::cli::{exit_code, run, RunConfig, EXIT_INPUT};

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("NORM_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        raw.trim().parse().map_err(|_| format!("NORM_LAB_THREADS must be a non-negative integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which here means "violation found".
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT);
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_INPUT);
    }
    match run(&config) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
