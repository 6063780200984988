use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pld_core::cli::{
    error_table, optimize_alpha, sweep_receiver, validate, write_csv, ScenarioFile, SnrRange, ValidationOptions,
};
use pld_core::FblCode;

/// Distortion sweeps, deception-rate optimization and oracle checks for
/// physical layer deception.
#[derive(Parser, Debug)]
#[command(name = "pld", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Scenario file (JSON)
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Monte Carlo seed; overrides the scenario file
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo trials per cell; overrides the scenario file
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Parallel Monte Carlo workers
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Packet error rate over an SNR grid
    ErrorTable {
        /// SNR grid in dB as lo:hi:step
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        snr: SnrRange,
        /// Payload bits; defaults to the scenario's or 64
        #[arg(long)]
        payload_bits: Option<u32>,
        /// Code rate; defaults to the scenario's or 1/2
        #[arg(long)]
        code_rate: Option<f64>,
    },
    /// Receiver's optimal strategy and minimum distortion over SNR
    SweepReceiver {
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        snr: SnrRange,
    },
    /// Optimal activation rate over a Bob × Eve SNR grid
    OptimizeAlpha {
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        bob_snr: SnrRange,
        #[arg(long, default_value = "-5:5:0.5", allow_hyphen_values = true)]
        eve_snr: SnrRange,
        /// Distortion budget for Bob; overrides the scenario file
        #[arg(long)]
        d_max: Option<f64>,
    },
    /// Check closed forms against enumeration and Monte Carlo
    Validate,
}

enum Failure {
    Input(anyhow::Error),
    Gates,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load_scenario(path: Option<&Path>) -> Result<ScenarioFile> {
    match path {
        Some(p) => ScenarioFile::load(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(ScenarioFile::default()),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit<T: Serialize>(path: Option<&Path>, rows: &[T]) -> Result<()> {
    let out = open_output(path)?;
    write_csv(out, rows).context("writing CSV")
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let common = &cli.common;
    let file = load_scenario(common.scenario.as_deref())?;
    let scenario = file.scenario().map_err(anyhow::Error::from)?;
    let out = common.out.as_deref();
    match cli.command {
        Command::ErrorTable { snr, payload_bits, code_rate } => {
            let k = payload_bits.unwrap_or(scenario.payload_bits);
            let rate = code_rate.unwrap_or(scenario.code_rate);
            let probe = pld_core::Scenario { payload_bits: k, code_rate: rate, ..scenario };
            let code: FblCode = probe
                .validate()
                .map_err(anyhow::Error::from)
                .and_then(|s| Ok(s.fbl_code()?))?;
            emit(out, &error_table(&snr, code).map_err(anyhow::Error::from)?)?;
        }
        Command::SweepReceiver { snr } => {
            emit(out, &sweep_receiver(&scenario, &snr).map_err(anyhow::Error::from)?)?;
        }
        Command::OptimizeAlpha { bob_snr, eve_snr, d_max } => {
            let d_max = d_max.unwrap_or(file.d_max);
            let rows = optimize_alpha(&scenario, d_max, &bob_snr, &eve_snr).map_err(anyhow::Error::from)?;
            emit(out, &rows)?;
        }
        Command::Validate => {
            let options = ValidationOptions {
                trials: common.trials.unwrap_or(file.mc_trials),
                seed: common.seed.unwrap_or(file.seed),
                workers: common.workers.max(1),
            };
            let report = validate(&scenario, &options).map_err(anyhow::Error::from)?;
            let mut sink = open_output(out)?;
            write!(sink, "{report}").context("writing report")?;
            if !report.passed() {
                return Err(Failure::Gates);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Gates) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
