mod args;
mod commands;
mod report;

use args::Cli;
use clap::Parser;
use commands::CliError;
use std::process::ExitCode;

/// `PADIC_EISENSTEIN_THREADS` caps the worker pool.
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("PADIC_EISENSTEIN_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n >= 1).ok_or(format!("PADIC_EISENSTEIN_THREADS={v:?} is not a positive integer"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(cli) {
        Ok((report, output)) => {
            let Some(bytes) = report.emit(output.format) else {
                eprintln!("error: {} has no {:?} rendering", report.command, output.format);
                return ExitCode::from(2);
            };
            match &output.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, bytes) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{bytes}"),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
