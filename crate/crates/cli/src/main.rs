use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tannaka_cli::model::{parse_model, ParseOptions};
use tannaka_cli::run::{run, Command, RunOptions};
use tannaka_cli::{exit, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Subcommand {
    /// Check every axiom the document carries data for
    Check,
    /// Build the coend coalgebroid, plus bialgebroid, fusion and antipode when present
    Reconstruct,
    /// Compare the colimit of a comodule family with the coalgebroid
    Counit,
    /// Run the recognition conditions i, ii and iii
    Recognize,
    /// Check filtered modules, tabulate homs and tensors, reconstruct
    Fl,
    /// Transport along a ring map and compare with recomputation
    Basechange,
}

impl From<Subcommand> for Command {
    fn from(s: Subcommand) -> Self {
        match s {
            Subcommand::Check => Command::Check,
            Subcommand::Reconstruct => Command::Reconstruct,
            Subcommand::Counit => Command::Counit,
            Subcommand::Recognize => Command::Recognize,
            Subcommand::Fl => Command::Fl,
            Subcommand::Basechange => Command::Basechange,
        }
    }
}

/// Exact Tannakian reconstruction over commutative rings.
///
/// Exit codes: 0 pass, 1 axiom or verdict failure, 2 parse error, 3 unsupported.
#[derive(Debug, Parser)]
#[command(name = "tannaka", version)]
struct Args {
    #[arg(value_enum)]
    command: Subcommand,
    /// Model document (JSON)
    model: PathBuf,
    /// Write the computed structure as a model document
    #[arg(long)]
    export: Option<PathBuf>,
    /// Largest set enumerated by a single search
    #[arg(long)]
    bound: Option<usize>,
    /// Write the JSON report here instead of standard output
    #[arg(long)]
    report: Option<PathBuf>,
    /// Residue characteristic for `fl`
    #[arg(long)]
    p: Option<u64>,
    /// Witt vector length for `fl`
    #[arg(long)]
    n: Option<u32>,
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn main_inner(args: Args) -> Result<i32, CliError> {
    let model = parse_model(&args.model, &ParseOptions { p: args.p, n: args.n })?;
    let outcome = run(args.command.into(), &model, &RunOptions { bound: args.bound })?;
    if let Some(path) = &args.export {
        match &outcome.export {
            Some(doc) => write(path, &serde_json::to_string_pretty(doc).expect("document serializes"))?,
            None => eprintln!("nothing to export"),
        }
    }
    let json = outcome.report.to_json();
    match &args.report {
        Some(path) => {
            write(path, &json)?;
            print!("{}", outcome.report.summary());
        }
        None => {
            println!("{json}");
            eprint!("{}", outcome.report.summary());
        }
    }
    Ok(outcome.report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = main_inner(args).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    debug_assert!([exit::PASS, exit::FAILURE, exit::PARSE, exit::UNSUPPORTED].contains(&code));
    ExitCode::from(code as u8)
}
