use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mvfunc_cli::{emit_report, run_suite, Format, HarnessConfig, Suite};

/// Check the derivative identities of multivector functionals on random inputs.
#[derive(Debug, Parser)]
#[command(name = "mvfunc", version)]
struct Args {
    /// Dimension of the vector space (2 to 6).
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// "euclidean" or a diagonal signature such as "diag:+,+,-".
    #[arg(long, default_value = "euclidean")]
    metric: String,
    /// Random trials per identity.
    #[arg(long, default_value_t = 64)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol_exact: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol_fd: f64,
    #[arg(long, default_value_t = 1e-5)]
    fd_step: f64,
    /// paper, properties, bridge or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mvfunc: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> Result<bool, mvfunc_cli::HarnessError> {
    let format: Format = args.format.parse()?;
    let config = HarnessConfig {
        dim: args.dim,
        metric: args.metric,
        trials: args.trials,
        seed: args.seed,
        tol_exact: args.tol_exact,
        tol_fd: args.tol_fd,
        fd_step: args.fd_step,
        suite: args.suite.parse::<Suite>()?,
    };
    let results = run_suite(&config)?;
    emit_report(&results, &config, format, args.out.as_deref())?;
    Ok(results.iter().all(|r| r.pass))
}
