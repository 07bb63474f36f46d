use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chebtrot_cli::commands;
use chebtrot_cli::config::{ExperimentConfig, OutputFormat};
use chebtrot_cli::CliError;

#[derive(Parser)]
#[command(
    name = "chebtrot",
    about = "Step-size extrapolation experiments for product-formula simulation",
    version
)]
struct Cli {
    /// JSON experiment configuration; defaults applied when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (must exist); overrides the config file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Random seed; overrides the config file
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker thread count; overrides CHEBTROT_THREADS and the config file
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format for result files
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extrapolate the tracked ground energy over a node-count sweep
    Energy,
    /// Extrapolate an observable expectation value
    Expval,
    /// Estimate the product-formula error from interference probabilities
    TrotterError,
    /// Compare exact truncation error against its certified bound
    Truncation,
    /// Scan the cost crossover between single-formula and extrapolated runs
    Cost,
    /// Sweep window preparation errors against their analytic budgets
    Window,
    /// Print the analytic bound reports for the configured experiment
    Bounds,
}

fn resolve_threads(flag: Option<usize>, config: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("CHEBTROT_THREADS") {
        Ok(raw) => {
            let parsed = raw.parse::<usize>().map_err(|_| {
                CliError::Config(format!("CHEBTROT_THREADS must be an integer, got {raw:?}"))
            })?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(config),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::load(cli.config.as_deref())?;
    cfg.apply_overrides(cli.out, cli.seed, cli.threads, cli.format);
    let threads = resolve_threads(cli.threads, cfg.threads)?;
    if let Some(count) = threads {
        if count == 0 {
            return Err(CliError::Config("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Energy => commands::cmd_energy(&cfg),
        Command::Expval => commands::cmd_expval(&cfg),
        Command::TrotterError => commands::cmd_trotter_error(&cfg),
        Command::Truncation => commands::cmd_truncation(&cfg),
        Command::Cost => commands::cmd_cost(&cfg),
        Command::Window => commands::cmd_window(&cfg),
        Command::Bounds => commands::cmd_bounds(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
