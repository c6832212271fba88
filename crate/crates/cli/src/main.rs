use std::path::PathBuf;
use std::process::ExitCode;

use aql_cli::{run_task, Cache, CliError, TaskArgs, TaskDescriptor, ARTIFACT_VERSION};
use clap::Parser;

/// Exact computations on quiver representations, reported as canonical JSON.
///
/// Commands: forms, affine-info, roots, coxeter, tubes, fk-verify, fk-bracket, kac,
/// hall, hall-chi, stability, generic, pp-moment, pp-lifts.
#[derive(Parser, Debug)]
#[command(name = "aql", version)]
struct Cli {
    /// Command to run.
    command: String,
    /// Quiver file: {"vertices": [...], "arrows": [{"id", "src", "dst"}, ...]}.
    #[arg(long, value_name = "PATH")]
    quiver: Option<PathBuf>,
    /// Dimension vector as CSV; repeat for commands taking several.
    #[arg(long, value_name = "CSV")]
    dim: Vec<String>,
    /// Primes as CSV.
    #[arg(long, value_name = "CSV")]
    primes: Option<String>,
    /// Level cutoff (fk-*, roots) or ad power (hall-chi).
    #[arg(long, value_name = "N")]
    cutoff: Option<u32>,
    /// Pairing in the mixed bracket: literal or symmetrized.
    #[arg(long)]
    variant: Option<String>,
    /// Cocycle: eps or eps-star.
    #[arg(long)]
    cocycle: Option<String>,
    /// Stability weight as CSV (default: the regular weight).
    #[arg(long, value_name = "CSV")]
    theta: Option<String>,
    /// Maximum number of points any single sweep may visit.
    #[arg(long, value_name = "N")]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Report cache directory.
    #[arg(long, value_name = "PATH", env = "AQL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let args = TaskArgs {
        command: cli.command,
        quiver: cli.quiver,
        dims: cli.dim,
        primes: cli.primes,
        cutoff: cli.cutoff,
        variant: cli.variant,
        cocycle: cli.cocycle,
        theta: cli.theta,
        budget: cli.budget,
    };
    let task = TaskDescriptor::from_args(&args)?;
    let cache = cli.cache_dir.map(|d| Cache::new(d, ARTIFACT_VERSION));
    Ok(run_task(&task, cache.as_ref())?.0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
