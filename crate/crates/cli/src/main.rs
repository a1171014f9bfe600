//! Command-line front end of the runfall toolkit.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data errors.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use runfall::commands::{self, UsageError};

#[derive(Parser, Debug)]
#[command(
    name = "runfall",
    version,
    about = "Fixed-target runtime measurement for black-box optimizers",
    long_about = "Measures and aggregates black-box optimizer performance from run logs: \
                  first-hitting runtimes, average runtime (aRT), bootstrapped simulated \
                  restarts, empirical runtime distributions, runlength-based targets, and \
                  the artificial best reference algorithm."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate run logs with the built-in mini suite
    Run(commands::run::RunArgs),
    /// Emit the average-runtime (aRT) table as CSV
    Art(commands::art::ArtArgs),
    /// Derive runlength-based targets from reference data
    Targets(commands::targets::TargetsArgs),
    /// Emit an aggregate empirical runtime distribution as CSV
    Ecdf(commands::ecdf::EcdfArgs),
    /// Compose the artificial best algorithm from several archives
    Best(commands::best::BestArgs),
    /// Render emitted CSVs as SVG figures
    Plot(commands::plot::PlotArgs),
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(args) => commands::run::main(args),
        Command::Art(args) => commands::art::main(args),
        Command::Targets(args) => commands::targets::main(args),
        Command::Ecdf(args) => commands::ecdf::main(args),
        Command::Best(args) => commands::best::main(args),
        Command::Plot(args) => commands::plot::main(args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => {}
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("usage error: {e}");
            std::process::exit(1);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
