use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "iquantum", version, about = "Invariants and verification suites for quantum symmetric pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,
    /// Diagram JSON file, or the name of a shipped fixture. Defaults to the suite's own cases.
    #[arg(long, global = true)]
    pub diagram: Option<String>,
    /// Comma-separated levels, e.g. `3,5,7`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub ell: Vec<u32>,
    /// Reduced word for w0, 1-based and comma separated, ending in a word for the black part.
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Write the report stream here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CommandArg {
    /// Satake invariants, the skew form and the degree table.
    Invariants,
    /// Run one verification suite.
    Verify { suite: Suite },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Unity,
    Kernel,
    Frobenius,
    Braid,
    Smalldim,
    Rewrite,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Suite as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Invariants,
    Verify(Suite),
}

impl Command {
    pub fn name(self) -> String {
        match self {
            Command::Invariants => "invariants".into(),
            Command::Verify(s) => format!("verify {}", serde_json::to_value(s).expect("plain enum").as_str().unwrap_or("")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub diagram: Option<String>,
    /// Empty means the command's default levels.
    pub ells: Vec<u32>,
    pub word: Option<String>,
    pub out: Option<PathBuf>,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, diagram: None, ells: Vec::new(), word: None, out: None, jobs: 1 }
    }

    pub fn diagram(mut self, src: &str) -> Self {
        self.diagram = Some(src.into());
        self
    }

    pub fn ells(mut self, ells: &[u32]) -> Self {
        self.ells = ells.to_vec();
        self
    }

    pub fn word(mut self, word: &str) -> Self {
        self.word = Some(word.into());
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CommandArg::Invariants => Command::Invariants,
            CommandArg::Verify { suite } => Command::Verify(suite),
        };
        RunConfig { command, diagram: cli.diagram, ells: cli.ell, word: cli.word, out: cli.out, jobs: cli.jobs }
    }
}
