use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plap::commands::run;
use plap::output::emit;
use plap::{CliError, CommandKind, Flags, RunConfig};

#[derive(Parser)]
#[command(name = "plap", version, about = "Sharp constants and minimal-support bounds for the p-Laplacian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the bound for a built-in pair or a family member.
    Verify(Flags),
    /// Sweep a family over a parameter grid and write CSV.
    Sweep(Flags),
    /// Compute K_{q,p} (or the K_M estimate with --orlicz).
    Constant(Flags),
    /// Luxemburg-type norm of a potential.
    OrliczNorm(Flags),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, flags) = match cli.command {
        Command::Verify(f) => (CommandKind::Verify, f),
        Command::Sweep(f) => (CommandKind::Sweep, f),
        Command::Constant(f) => (CommandKind::Constant, f),
        Command::OrliczNorm(f) => (CommandKind::OrliczNorm, f),
    };
    match execute(kind, flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(kind: CommandKind, flags: Flags) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(kind, flags)?;
    let outcome = run(&cfg)?;
    emit(&outcome.text, cfg.output.as_deref())?;
    if cfg.output.is_some() {
        println!("{}", outcome.summary);
    } else {
        eprintln!("{}", outcome.summary);
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
