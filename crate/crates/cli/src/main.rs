use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

use iquantum_cli::{run, Cli, CliError, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    let result = match &cfg.out {
        Some(path) => File::create(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
            .and_then(|f| run(&cfg, &mut BufWriter::new(f))),
        None => run(&cfg, &mut io::stdout().lock()),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.summary.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
