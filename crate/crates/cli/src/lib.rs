//! Command-line harness around `hadamard_coord`: sweeps over catalog
//! functions, rectangles and points, reported as CSV or JSON.
//!
//! Exit codes: 0 when every row passes or warns, 1 when a row fails, 2 on
//! usage or configuration errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod number;
pub mod report;
pub mod threads;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::{Args, Parser, Subcommand};

pub use config::{Format, SweepArgs, SweepConfig};
pub use error::{CliError, CliResult};
pub use report::{Report, Row, Status, Summary};

#[derive(Debug, Parser)]
#[command(
    name = "hadamard-coord",
    version,
    about = "Corner/edge cubature error bounds on rectangles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the corner/edge identity against its kernel integrals.
    VerifyLemma(SweepArgs),
    /// Evaluate T1/T2/T3 and the corollaries.
    Bounds(SweepArgs),
    /// The five-level Hadamard chain.
    Chain(SweepArgs),
    /// Sampled convexity of f and of |D|^q.
    CheckConvexity(SweepArgs),
    /// Grid search for the point with the smallest bound.
    Tighten(SweepArgs),
    /// Print the built-in catalog.
    ListFunctions(ListArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ListArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

type Runner = fn(&SweepConfig) -> CliResult<Report>;

pub fn build_report(command: &Command) -> CliResult<(Report, SweepConfig)> {
    let (args, grid, run): (&SweepArgs, usize, Runner) = match command {
        Command::VerifyLemma(a) => (a, commands::DEFAULT_SWEEP_GRID, commands::verify_lemma),
        Command::Bounds(a) => (a, commands::DEFAULT_SWEEP_GRID, commands::bounds),
        Command::Chain(a) => (a, commands::DEFAULT_SWEEP_GRID, commands::chain),
        Command::CheckConvexity(a) => (
            a,
            hadamard_coord::DEFAULT_HYPOTHESIS_GRID,
            commands::check_convexity,
        ),
        Command::Tighten(a) => (a, commands::DEFAULT_TIGHTEN_GRID, commands::tighten),
        Command::ListFunctions(_) => return Err(CliError::usage("list-functions has no report")),
    };
    let cfg = SweepConfig::resolve(args, grid)?;
    Ok((run(&cfg)?, cfg))
}

fn open_output(path: Option<&std::path::Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs one parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> CliResult<i32> {
    if let Command::ListFunctions(args) = &cli.command {
        let rows = commands::list_functions();
        let mut out = open_output(None)?;
        match args.format.unwrap_or(Format::Csv) {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(["name", "formula", "properties"])?;
                for r in &rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let items: Vec<_> = rows
                    .iter()
                    .map(|[n, f, p]| serde_json::json!({"name": n, "formula": f, "properties": p}))
                    .collect();
                serde_json::to_writer_pretty(&mut out, &items)?;
                writeln!(out)?;
            }
        }
        out.flush()?;
        return Ok(0);
    }
    let (report, cfg) = build_report(&cli.command)?;
    let mut out = open_output(cfg.out.as_deref())?;
    match cfg.format {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => report.write_json(&mut out)?,
    }
    out.flush()?;
    let s = report.summary;
    eprintln!(
        "{}: {} rows, {} pass, {} warning, {} fail",
        report.command, s.total, s.pass, s.warning, s.fail
    );
    Ok(report.exit_code())
}
