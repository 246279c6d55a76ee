use std::path::PathBuf;
use std::process::ExitCode;

use ciswap_cli::{list_experiments, run, CliError, ExperimentConfig, FileConfig};
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "ciswap", version, about = "Run a named controlled-iSWAP experiment")]
struct Args {
    /// Experiment name; see --list.
    experiment: Option<String>,
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Monte Carlo sample count.
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    #[arg(long)]
    quiet: bool,
    /// Print the available experiments and exit.
    #[arg(long)]
    list: bool,
}

fn execute(args: Args) -> Result<(), CliError> {
    if args.list {
        for e in list_experiments() {
            println!("{:<24} {}", e.name, e.description);
        }
        return Ok(());
    }
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let config = ExperimentConfig::resolve(file, args.experiment, args.seed, args.out, args.samples)?;
    let artifacts = run(&config)?;
    if !args.quiet {
        for f in &artifacts.files {
            println!("{}", f.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut logger = env_logger::Builder::new();
    if args.quiet {
        logger.filter_level(log::LevelFilter::Off);
    } else {
        logger.filter_level(log::LevelFilter::Warn).parse_default_env();
    }
    logger.init();
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
