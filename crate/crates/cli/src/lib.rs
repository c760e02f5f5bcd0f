//! Diagram ingestion, invariant reports and verification suites behind the `iquantum` binary.
//!
//! Every check becomes one JSON line; a summary line closes the stream. Exit codes are 0 when all
//! checks pass, 1 when any fails and 2 for invalid input.

pub mod config;
pub mod report;
pub mod suites;

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use iquantum::rootdata::RootError;
use iquantum::satake::SatakeError;

pub use config::{Cli, Command, RunConfig, Suite};
pub use report::{Record, Summary};
pub use suites::{load_diagram, plan};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid diagram: {0}")]
    Diagram(#[from] SatakeError),
    #[error("invalid Cartan data: {0}")]
    Root(#[from] RootError),
    #[error("{reason}")]
    Level { ell: u32, reason: String },
    #[error("{0}")]
    Config(String),
    #[error("cannot write report: {0}")]
    Output(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn emit<T: Serialize>(out: &mut dyn Write, item: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(item).map_err(|e| CliError::Output(e.into()))?;
    writeln!(out, "{line}").and_then(|_| out.flush()).map_err(CliError::Output)
}

/// Validates the whole configuration, then runs and reports every check.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let tasks = plan(cfg)?;
    let records = if cfg.jobs <= 1 {
        let mut records = Vec::with_capacity(tasks.len());
        for task in &tasks {
            let r = task();
            emit(out, &r)?;
            records.push(r);
        }
        records
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let records: Vec<Record> = pool.install(|| tasks.par_iter().map(|t| t()).collect());
        for r in &records {
            emit(out, r)?;
        }
        records
    };
    let summary = Summary::new(cfg.command.name(), &records, started);
    emit(out, &summary)?;
    Ok(Outcome { records, summary })
}
