use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};

use unimodal_lab::eclass::{DEFAULT_GRID, DEFAULT_REFINE_TOL};
use unimodal_lab_cli::{
    run, CliError, Command, Format, RunConfig, CERTMAX_DEFAULT_TOL, GENERAL_DEFAULT_CAP, THREADS_ENV,
};

/// Exact unimodality of (1+x)^m (1+x^k) and the class-E threshold m(k).
#[derive(Debug, Parser)]
#[command(name = "unimodal-lab", version)]
struct Cli {
    /// Output format (each command has its own default).
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Unimodality verdicts for one (m, k).
    Check {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Minimal m for strong unimodality and unimodality, k in [k-min, k-max].
    ScanTheorem1 {
        #[arg(long, default_value_t = 2)]
        k_min: u64,
        #[arg(long)]
        k_max: u64,
        /// Largest m tried (default k^2 + 8 for each k).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Exact check of the log-concavity inequality over the central range of u.
    ProbeInequality {
        #[arg(long)]
        k: u64,
    },
    /// Maximum of L(k, theta), m(k) and membership certificates.
    Eclass {
        #[arg(long)]
        k: u64,
        /// Also certify this exponent.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_REFINE_TOL)]
        tol: f64,
    },
    /// max L / k^4 against the enclosure of max D, k in [k-min, k-max].
    ScanEclass {
        #[arg(long, default_value_t = 9)]
        k_min: u64,
        #[arg(long)]
        k_max: u64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_REFINE_TOL)]
        tol: f64,
    },
    /// Enclosure of max D on (pi/2, pi) and of its critical point.
    Certmax {
        #[arg(long, default_value_t = CERTMAX_DEFAULT_TOL)]
        tol: f64,
    },
    /// Minimal N with (1+x)^N p strongly unimodal; p read from FILE ("-" for stdin).
    General {
        #[arg(value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = GENERAL_DEFAULT_CAP)]
        cap: u64,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            Sub::Check { m, k } => Command::Check { m, k },
            Sub::ScanTheorem1 { k_min, k_max, cap } => Command::ScanTheorem1 { k_min, k_max, cap },
            Sub::ProbeInequality { k } => Command::ProbeInequality { k },
            Sub::Eclass { k, m, grid, tol } => Command::Eclass { k, m, grid, tol },
            Sub::ScanEclass { k_min, k_max, grid, tol } => Command::ScanEclass { k_min, k_max, grid, tol },
            Sub::Certmax { tol } => Command::Certmax { tol },
            Sub::General { input, cap } => Command::General { input, cap },
        };
        RunConfig { command, format: cli.format, out: cli.out }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

fn execute(cfg: RunConfig) -> Result<i32, CliError> {
    configure_threads()?;
    let report = run(&cfg)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &cfg.out {
        Some(path) => std::fs::write(path, &report.body)?,
        None => std::io::stdout().write_all(report.body.as_bytes())?,
    }
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match execute(cli.into()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
