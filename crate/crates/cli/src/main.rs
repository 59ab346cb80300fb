use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use isgcoh_cli::commands::{
    cohomology_cmd, roundtrip, validate, CohomologyArgs, RoundtripArgs, ValidateArgs,
};

/// Cohomology of finite inverse semigroups and crossed module extensions.
#[derive(Parser)]
#[command(name = "isgcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a semigroup, a T-module and cochains.
    Validate(ValidateArgs),
    /// Enumerate Zⁿ, Bⁿ and Hⁿ.
    Cohomology(CohomologyArgs),
    /// Run the cocycle ↔ extension round trip on a 3-cocycle.
    Roundtrip(RoundtripArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Cohomology(a) => cohomology_cmd(a),
        Command::Roundtrip(a) => roundtrip(a),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
