mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "stringy-calc",
    version,
    about = "Exact stringy Euler numbers and the M_2n integrality obstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler numbers a_n of Hilbert schemes of points on a K3 surface
    Hilb {
        #[arg(long = "max", value_name = "N")]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Integrality test of n*a_n/(2n-3) for 2 <= n <= N
    Obstruction {
        #[arg(long = "max", value_name = "N", value_parser = clap::value_parser!(u64).range(2..))]
        max: u64,
        /// Also compare with a_{4n-3} + a_n/4
        #[arg(long)]
        vw: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Stringy Euler number (and optionally E-function) of a stratification
    Stringy(StringyArgs),
}

#[derive(Debug, Args)]
struct StringyArgs {
    /// Stratification JSON file
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "model",
        required_unless_present = "model"
    )]
    strata: Option<std::path::PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    model: Option<Model>,
    #[arg(long, value_name = "N", requires = "model", value_parser = clap::value_parser!(u64).range(2..))]
    n: Option<u64>,
    /// Euler number of the stable locus; omitted means unknown
    #[arg(long, value_name = "E", requires = "model", allow_hyphen_values = true)]
    e_stable: Option<String>,
    /// Also compute E_st on the diagonal w = uv
    #[arg(long)]
    symbolic: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Ogrady,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hilb { max, format } => commands::hilb(max, format),
        Command::Obstruction { max, vw, format } => commands::obstruction(max, vw, format),
        Command::Stringy(args) => {
            let source = match (args.strata, args.model, args.n) {
                (Some(path), _, _) => commands::StringySource::File(path),
                (None, Some(Model::Ogrady), Some(n)) => commands::StringySource::Ogrady {
                    n,
                    e_stable: args.e_stable,
                },
                _ => unreachable!("clap enforces --strata or --model with --n"),
            };
            commands::stringy(source, args.symbolic, args.format)
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
