use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtc_core::cli::{execute, exit_code, Command, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "mtc",
    version,
    about = "Modular data and simple-current invariants of su(N) at level k"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// S, T, theta, zeta and quantum dimensions, after checking the SL(2,Z) relations.
    ModularData(Common),
    /// Simple currents and the effective center.
    EffectiveCenter(Common),
    /// Torus partition function of the Schellekens algebra on <J^p>.
    Schellekens(Common),
    /// Exhaustive search for modular invariants.
    Invariants(Common),
    /// Reducibility verdict from the Schellekens partition function.
    Reducibility(Common),
    /// Verdict table over 2 <= N' <= N, 1 <= k' <= k.
    Grid(Common),
}

#[derive(Args)]
struct Common {
    /// Rank: the algebra is su(N).
    #[arg(long = "N", default_value_t = 2)]
    rank: usize,
    /// Level; not needed with --input.
    #[arg(long = "k", required_unless_present = "input")]
    level: Option<u32>,
    /// Support generator p, H = <J^p>.
    #[arg(long)]
    support: Option<u32>,
    /// Largest entry allowed in the invariant search.
    #[arg(long, default_value_t = 3)]
    max_entry: u32,
    /// Free-parameter budget for the invariant search (default 24, or MTC_BUDGET).
    #[arg(long)]
    budget: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Modular datum JSON to search instead of computing one (invariants only).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

fn config(cmd: Cmd) -> RunConfig {
    let (command, c) = match cmd {
        Cmd::ModularData(c) => (Command::ModularData, c),
        Cmd::EffectiveCenter(c) => (Command::EffectiveCenter, c),
        Cmd::Schellekens(c) => (Command::Schellekens, c),
        Cmd::Invariants(c) => (Command::Invariants, c),
        Cmd::Reducibility(c) => (Command::Reducibility, c),
        Cmd::Grid(c) => (Command::Grid, c),
    };
    RunConfig {
        command,
        rank: c.rank,
        level: c.level.unwrap_or(0),
        support: c.support,
        max_entry: c.max_entry,
        budget: c.budget,
        output: c.output,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        },
        input: c.input,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&config(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
