//! `gafoundry` command-line front end.

mod baselines;
mod common;
mod export;
mod run;
mod runner;
mod tune;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

const LONG_ABOUT: &str = "\
Configurable (mu+lambda) GA runs, baseline studies and racing-based tuning on W-model instances.

Sign convention: `run`, `baselines` and `tune` report AUC, where larger is better. \
`target-runner` prints the negated AUC because external tuners minimize cost.

Exit codes: 0 success, 1 runtime failure, 2 usage error.";

#[derive(Parser)]
#[command(name = "gafoundry", version, about = "Configurable GA runs, baselines and tuning", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration once and print `auc=<value>`.
    Run(run::RunArgs),
    /// Run the four reference algorithms and write `baselines.csv`.
    Baselines(baselines::BaselineArgs),
    /// Iterated racing over the configuration space of one instance.
    Tune(tune::TuneArgs),
    /// One run in external-tuner convention; prints the cost (negated AUC).
    #[command(disable_help_flag = true)]
    TargetRunner(runner::RunnerArgs),
    /// Re-export CSV data from run artifacts.
    Export(export::ExportArgs),
    /// Print the benchmark suite as CSV.
    Instances,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run::execute(args),
        Command::Baselines(args) => baselines::execute(args),
        Command::Tune(args) => tune::execute(args),
        Command::TargetRunner(args) => runner::execute(args),
        Command::Export(args) => export::execute(args),
        Command::Instances => {
            print!(
                "{}",
                gafoundry::wmodel::to_csv(&gafoundry::wmodel::instances())
            );
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
