//! Command-line harness for `permmind`.
//!
//! Exit statuses: 0 success, 1 usage or input error, 2 verification
//! failure, 3 a lower-bound lemma was falsified.

pub mod commands;
pub mod interactive;
pub mod report;
pub mod secrets;

use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use permmind::DEFAULT_MAX_STATES;

pub const MAX_STATES_ENV: &str = "PERMMIND_MAX_STATES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Usage = 1,
    Verification = 2,
    Falsified = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "permmind",
    version,
    about = "Black-peg Mastermind without repeated colors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one secret and report the query count.
    Solve(SolveArgs),
    /// Solve every secret of a configuration.
    Exhaustive(ExhaustiveArgs),
    /// Play the solver against the minimum-answer adversary.
    Adversary(AdversaryArgs),
    /// Solve seeded random secrets and report statistics.
    Bench(BenchArgs),
    /// Play against a human codemaker on stdin.
    Interactive(InteractiveArgs),
    /// Exact optimal worst case for tiny permutation games.
    Minimax(MinimaxArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Number of positions.
    #[arg(long)]
    pub n: usize,
    /// Number of colors, defaults to n.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Comma-separated colors, e.g. 7,1,4,3,2,8,5,6.
    #[arg(long)]
    pub secret: String,
    /// Write the game as JSON.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExhaustiveArgs {
    #[command(flatten)]
    pub game: GameArgs,
    /// Write the stats row here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AdversaryArgs {
    #[command(flatten)]
    pub game: GameArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the stats row here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Also write the stats, with histogram, as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct InteractiveArgs {
    #[command(flatten)]
    pub game: GameArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MinimaxArgs {
    #[arg(long)]
    pub n: usize,
    /// Allow n = 5, which takes much longer.
    #[arg(long)]
    pub extended: bool,
}

/// Reads the capacity override, falling back to the default.
pub fn max_states_from_env() -> Result<u64, String> {
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_STATES_ENV}={v} is not a count")),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

pub fn run(
    cli: &Cli,
    max_states: u64,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<Status> {
    match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a, out, err),
        Command::Exhaustive(a) => commands::cmd_exhaustive(a, max_states, out, err),
        Command::Adversary(a) => commands::cmd_adversary(a, max_states, out, err),
        Command::Bench(a) => commands::cmd_bench(a, out, err),
        Command::Interactive(a) => commands::cmd_interactive(a, max_states, input, out, err),
        Command::Minimax(a) => commands::cmd_minimax(a, out, err),
    }
}
