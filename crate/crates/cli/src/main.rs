//! `safestab` command-line front end.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] safestab::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Eval(safestab::Error::Parameter(_))
            | CliError::Eval(safestab::Error::Dimension { .. }) => 2,
            CliError::Eval(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "safestab", version, about = "Closed-form safe stabilizing feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every controller at one state.
    Eval(EvalArgs),
    /// Simulate the closed loop described by a config file.
    Simulate(SimulateArgs),
    /// Tabulate compatibility and feasible sets over a state grid.
    Sweep(FileArgs),
    /// Search a grid for an initial state that separates baseline and sharp laws.
    FindX0(FileArgs),
}

/// Controller overrides shared by `eval` and `simulate`.
#[derive(Debug, Clone, Default, Args)]
pub struct ControllerArgs {
    #[arg(long)]
    pub law: Option<String>,
    /// sontag | freeman
    #[arg(long)]
    pub formula: Option<String>,
    /// logistic | tanh | algebraic
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, default_value = safestab::plant::PAPER_EXAMPLE)]
    pub system: String,
    /// State as a comma-separated list, e.g. `1,-0.5`.
    #[arg(long, required = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub x: Vec<f64>,
    #[command(flatten)]
    pub controller: ControllerArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub config: PathBuf,
    #[command(flatten)]
    pub controller: ControllerArgs,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FileArgs {
    pub config: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::FindX0(a) => commands::find_x0(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
