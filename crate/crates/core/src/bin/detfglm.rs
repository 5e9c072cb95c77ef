use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use detfglm_core::gb::{run_many, Mode, PrimeField, VerifyConfig, DEFAULT_PRIME};
use detfglm_core::gb::pipeline::DEFAULT_DEGREE_GUARD;
use detfglm_core::report::{
    figure_report, hilbert_report, render, table_report, OutputFormat, ReferenceValues,
};
use detfglm_core::{cost_model, Error, SystemParams};

/// Hilbert series, sparse-FGLM cost prediction and Gröbner-basis checks for
/// generic determinantal systems.
#[derive(Parser)]
#[command(name = "detfglm", version)]
struct Cli {
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "json")]
    format: OutputFormat,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<SystemParams, Error> {
        SystemParams::new(self.d, self.p, self.n)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series by both constructions, with degree, peak and identity check.
    Hilbert(ParamArgs),
    /// Predicted m, densities and model costs.
    Predict(ParamArgs),
    /// Density table with reference values and deviations.
    Table {
        /// Reference-value fixture to use instead of the built-in one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Per-n records for one (d, p) series.
    Figure {
        /// Series as d,p, e.g. 4,2 or 8,4.
        #[arg(long)]
        series: String,
        /// Inclusive range of n as A..B; defaults to the reference range.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Compute Gröbner bases of random instances and check the predictions.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_PRIME as u64)]
        prime: u64,
        /// generic or critical-point.
        #[arg(long, default_value = "generic")]
        mode: Mode,
        /// Adjoin a least variable y - sum(lambda_j x_j) and check shape position.
        #[arg(long)]
        extend: bool,
        /// Refuse instances whose ideal degree exceeds this.
        #[arg(long, default_value_t = DEFAULT_DEGREE_GUARD)]
        max_degree_guard: usize,
    },
}

enum Outcome {
    Pass,
    Finding,
}

fn parse_pair(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::InvalidArgument(format!("expected d,p but got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::InvalidArgument(format!("expected a range A..B but got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn load_fixtures(path: &Option<PathBuf>) -> Result<ReferenceValues, Error> {
    match path {
        Some(p) => ReferenceValues::load(p),
        None => Ok(ReferenceValues::embedded()),
    }
}

fn run(cli: &Cli) -> Result<(String, Outcome), Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Hilbert(a) => {
            let r = hilbert_report(&a.params()?)?;
            let outcome = if r.identity_check { Outcome::Pass } else { Outcome::Finding };
            Ok((render(&[r], fmt, true)?, outcome))
        }
        Command::Predict(a) => Ok((render(&[cost_model(&a.params()?)], fmt, true)?, Outcome::Pass)),
        Command::Table { fixtures } => {
            let rows = table_report(&load_fixtures(fixtures)?)?;
            let outcome = if rows.iter().all(|r| r.passed()) { Outcome::Pass } else { Outcome::Finding };
            Ok((render(&rows, fmt, false)?, outcome))
        }
        Command::Figure { series, range, fixtures } => {
            let (d, p) = parse_pair(series)?;
            let (lo, hi) = match range {
                Some(r) => parse_range(r)?,
                None => (p + 1, 20),
            };
            let records = figure_report(d, p, lo..=hi, &load_fixtures(fixtures)?)?;
            let outcome = if records.iter().all(|r| r.passed()) { Outcome::Pass } else { Outcome::Finding };
            Ok((render(&records, fmt, false)?, outcome))
        }
        Command::Verify { params, seeds, prime, mode, extend, max_degree_guard } => {
            let config = VerifyConfig {
                params: params.params()?,
                seed: 0,
                mode: *mode,
                field: PrimeField::new(*prime)?,
                extend: *extend,
                degree_guard: *max_degree_guard,
            };
            let reports = run_many(&config, seeds)?;
            let outcome = if reports.iter().all(|r| r.passed) { Outcome::Pass } else { Outcome::Finding };
            Ok((render(&reports, fmt, false)?, outcome))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::DegreeGuard { .. } | Error::Dimension { .. } => 3,
        Error::InternalInconsistency(_) | Error::StructureViolation { .. } | Error::ShapePosition(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, outcome)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Finding => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
