//! `quatcomp`: color-image completion with quaternion low-rank solvers.

mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{BenchmarkArgs, CompleteArgs, MaskArgs};
use crate::config::FileConfig;
use crate::error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "quatcomp", version, about = "Quaternion low-rank completion of color images")]
struct Cli {
    /// key = value file with defaults for any long flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random sampling mask
    Mask(MaskArgs),
    /// Complete one image
    Complete(CompleteArgs),
    /// Run every method and sampling rate over a directory of images
    Benchmark(BenchmarkArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Mask(args) => commands::cmd_mask(args, &file),
        Command::Complete(args) => commands::cmd_complete(args, &file),
        Command::Benchmark(args) => commands::cmd_benchmark(args, &file),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
