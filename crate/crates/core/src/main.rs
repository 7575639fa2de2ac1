use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use diffudict::experiment::{exit_code, run_experiment};
use diffudict::io::{ExperimentConfig, Pipeline};
use diffudict::netsim::Workers;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Infer,
    Learn,
    Novelty,
    Bicluster,
    Bench,
}

/// Distributed online dictionary learning simulator.
#[derive(Debug, Parser)]
#[command(name = "diffudict", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Key-value configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides `experiment.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `experiment.output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fail = |e: diffudict::Error| {
        eprintln!("diffudict: {e}");
        ExitCode::from(exit_code(&e) as u8)
    };
    let mut cfg = match ExperimentConfig::from_file(&cli.config) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    cfg.pipeline = match cli.command {
        Command::Infer => Pipeline::Infer,
        Command::Learn => Pipeline::Learn,
        Command::Novelty => Pipeline::Novelty,
        Command::Bicluster => Pipeline::Bicluster,
        Command::Bench => Pipeline::Bench,
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = cli.out {
        cfg.output_dir = out;
    }
    let workers = match Workers::from_env() {
        Ok(w) => w,
        Err(e) => return fail(diffudict::Error::Config(e.to_string())),
    };
    match run_experiment(&cfg, workers) {
        Ok(summary) => {
            for line in &summary.lines {
                println!("{line}");
            }
            for path in &summary.artifacts {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
