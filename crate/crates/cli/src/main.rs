mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use output::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var("STABLEREP_BUDGET") {
        match raw.trim().parse::<usize>() {
            Ok(b) => stablerep::permrep::set_basis_budget(b),
            Err(_) => return usage(&format!("STABLEREP_BUDGET must be a nonnegative integer, got {raw:?}")),
        }
    }
    if let Some(jobs) = cli.jobs {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let format = cli.format;
    match commands::run(&cli) {
        Ok(table) => {
            let text = match format {
                Format::Json => table.to_json(),
                Format::Csv => table.to_csv(),
            };
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => usage(&msg),
        Err(CliError::Compute(e)) => {
            let body = serde_json::json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}
