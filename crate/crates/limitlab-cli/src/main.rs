//! Command-line front end: parse a config, run it, print the verdict.
//!
//! Exit status: 0 whenever the experiment ran to a verdict (a negative
//! verdict is still a result), nonzero when the config or its domain is
//! bad. Wall-clock goes to stdout only; artifacts stay time-free.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "limitlab", version, about = "Experiment runner for learning in the limit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write its artifacts.
    Run {
        /// Path to the experiment config (JSON).
        config: PathBuf,
        /// Output directory for artifacts; overrides the config's output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed override for seeded texts; overrides any seed in the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List built-in learners, metrics, texts, chains, and experiment kinds.
    List,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            print!("{}", limitlab::builtin_catalog());
            ExitCode::SUCCESS
        }
        Command::Run { config, out, seed } => {
            let started = Instant::now();
            match limitlab::run_config_file(&config, out.as_deref(), seed) {
                Ok(outcome) => {
                    println!("{}", outcome.verdict_line);
                    println!("artifacts: {}", outcome.out_dir.display());
                    println!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
                    ExitCode::SUCCESS
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
