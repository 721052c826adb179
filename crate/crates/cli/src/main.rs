//! `pgconv`: batch front end for the photon-graviton conversion simulator.
//!
//! Subcommands: `convert` (one scenario), `scan` (one-axis sweep),
//! `entangle` (two-qubit scenarios), `oracle-check` (self-check suites).
//! Exit codes: 0 success, 1 validation error, 2 numeric or resource error,
//! 3 self-check failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use photon_graviton::checks::Suite;
use photon_graviton::{Error, Result};

use crate::commands::{cmd_convert, cmd_entangle, cmd_oracle_check, cmd_scan, AxisSpec, Scenario};
use crate::config::{parse_config, validate_config, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "pgconv",
    version,
    about = "Photon-graviton conversion in a static magnetic field",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the conversion probability for one scenario
    Convert(JobArgs),
    /// Sweep one parameter and tabulate the probability along it
    Scan(ScanArgs),
    /// Run a two-qubit entanglement scenario
    Entangle(EntangleArgs),
    /// Run the deterministic self-check suites
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Config file with one `key = value` per line (# comments allowed)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override the Fock-space truncation from the config
    #[arg(long, value_name = "INT")]
    n_max: Option<usize>,
    /// Cross-check the analytic probability on a truncated Fock space
    #[arg(long)]
    oracle: bool,
    /// Output format (only csv is available)
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Swept parameter: B, L, f, r_db, beta, phase, z or f_c
    #[arg(long)]
    axis: String,
    /// First axis value
    #[arg(long)]
    min: f64,
    /// Last axis value
    #[arg(long)]
    max: f64,
    /// Number of grid points
    #[arg(long)]
    steps: usize,
    /// Grid spacing: linear or log
    #[arg(long, default_value = "linear")]
    scale: String,
}

#[derive(Args)]
struct EntangleArgs {
    /// Scenario: swap or generate
    #[arg(long)]
    scenario: String,
    /// Interaction strength lambda*t in radians
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    strength: f64,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format (only csv is available)
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct OracleArgs {
    /// Run one suite (commutators, bogoliubov, norms, probabilities,
    /// identities) instead of all of them
    #[arg(long)]
    suite: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn require_csv(format: &str) -> Result<()> {
    if format == "csv" {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "unsupported format '{}'; only csv is available",
            format
        )))
    }
}

fn load_scenario(args: &JobArgs) -> Result<ScenarioConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read config {}: {}", path.display(), e))
            })?;
            parse_config(&text)?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(n_max) = args.n_max {
        config.n_max = n_max;
    }
    if args.oracle {
        config.oracle = true;
    }
    validate_config(&config)?;
    Ok(config)
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Config(_) | Error::Domain(_) | Error::Lookup(_) | Error::Mismatch(_) => 1,
        Error::Resource(_) | Error::Numeric(_) | Error::Convergence { .. } => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Convert(args) => {
            require_csv(&args.format)?;
            let config = load_scenario(&args)?;
            cmd_convert(&config, args.out.as_deref())?;
            Ok(0)
        }
        Command::Scan(args) => {
            require_csv(&args.job.format)?;
            let config = load_scenario(&args.job)?;
            let spec = AxisSpec::new(&args.axis, args.min, args.max, args.steps, &args.scale)?;
            cmd_scan(&config, &spec, args.job.out.as_deref())?;
            Ok(0)
        }
        Command::Entangle(args) => {
            require_csv(&args.format)?;
            let scenario = Scenario::from_str(&args.scenario)?;
            cmd_entangle(scenario, args.strength, args.out.as_deref())?;
            Ok(0)
        }
        Command::OracleCheck(args) => {
            let suite = args.suite.as_deref().map(Suite::from_str).transpose()?;
            let all_pass = cmd_oracle_check(suite, args.out.as_deref())?;
            Ok(if all_pass { 0 } else { 3 })
        }
    }
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
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {}", error);
            ExitCode::from(exit_code_for(&error))
        }
    }
}
