//! Batch front-end: scenario files in, tables out.
//!
//! Exit codes: 0 success, 2 validation error, 3 dense-dimension cap
//! exceeded.

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ergoflow::error::Error;
use output::Format;

#[derive(Parser)]
#[command(name = "ergoflow", version, about = "work extraction from ensembles of identical finite-level systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal extractable work of the scenario state.
    Maxwork(CommonArgs),
    /// Time-resolved protocol simulation with entanglement bounds.
    Path(CommonArgs),
    /// Work/entanglement grid scan for four three-level systems.
    Figure1(CommonArgs),
    /// Passive tensor-power report: thermal match, bound sweep, thresholds.
    Passive(CommonArgs),
    /// Microcanonical-shell extraction schedule.
    Microcanonical(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Output format: csv or jsonl. Overrides the scenario file.
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when absent. Overrides the scenario file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Time samples per step (path command).
    #[arg(long)]
    samples: Option<usize>,
    /// Grid resolution per axis (figure1 command).
    #[arg(long)]
    grid: Option<usize>,
}

fn run(command: &Command) -> ergoflow::error::Result<()> {
    let args = match command {
        Command::Maxwork(a)
        | Command::Path(a)
        | Command::Figure1(a)
        | Command::Passive(a)
        | Command::Microcanonical(a) => a,
    };
    let scenario = scenario::load(&args.scenario)?;
    let format = match args.format.as_deref().or(scenario.output.format.as_deref()) {
        Some(name) => Format::parse(name)?,
        None => Format::Csv,
    };
    let out = args
        .out
        .clone()
        .or_else(|| scenario.output.path.as_ref().map(PathBuf::from));

    let table = match command {
        Command::Maxwork(_) => commands::maxwork(&scenario)?,
        Command::Path(_) => commands::path(&scenario, args.samples)?,
        Command::Figure1(_) => commands::figure1(&scenario, args.grid)?,
        Command::Passive(_) => commands::passive(&scenario)?,
        Command::Microcanonical(_) => commands::microcanonical(&scenario)?,
    };
    table.write(format, out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("ergoflow: {error}");
            match error {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
