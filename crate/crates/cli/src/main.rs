use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pohozaev_cli::config::Config;
use pohozaev_cli::{cmd_flow, cmd_fourier, cmd_verify, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "poho",
    version,
    about = "Verify Pohozaev identities for half-harmonic and harmonic maps"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Configuration file with [verify] and [flow] sections
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file (stdout when omitted)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Grid size, a power of two
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Tolerance applied to every identity
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    /// Seed for randomized maps
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,

    /// Worker threads
    #[arg(long, global = true, env = "POHO_JOBS", value_name = "INT")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification suite and write a JSON report
    Verify,
    /// Flow a perturbed identity map and certify the result
    Flow {
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        amplitude: Option<f64>,
        /// Trace CSV path
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Write the real Fourier coefficients and relation residuals of a map
    Fourier {
        /// Map id, e.g. blaschke:0.5
        map: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

fn load(global: &Global) -> Result<Config, CliError> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(out) = &global.out {
        cfg.verify.out = Some(out.clone());
        cfg.flow.out = Some(out.clone());
    }
    if let Some(n) = global.grid {
        cfg.verify.grid = n;
        cfg.flow.grid = n;
    }
    if let Some(tol) = global.tol {
        cfg.verify.global_tol = Some(tol);
        cfg.flow.tol = tol;
    }
    if let Some(seed) = global.seed {
        cfg.verify.seed = seed;
        cfg.flow.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let mut cfg = load(&cli.global)?;
    match cli.command {
        Command::Verify => cmd_verify(&cfg.verify),
        Command::Flow {
            tau,
            max_steps,
            amplitude,
            trace,
        } => {
            let f = &mut cfg.flow;
            f.tau = tau.unwrap_or(f.tau);
            f.max_steps = max_steps.unwrap_or(f.max_steps);
            f.amplitude = amplitude.unwrap_or(f.amplitude);
            f.trace = trace.or(f.trace.take());
            cmd_flow(f)
        }
        Command::Fourier { map, n_max } => cmd_fourier(&map, n_max, &cfg.verify),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("poho: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
