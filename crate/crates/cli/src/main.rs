//! `kstat`: k-statistics from CSV files, symbolic formulas, exact
//! self-verification and a scaling benchmark.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "kstat",
    version,
    about = "Unbiased cumulant estimation with k-statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Kstat,
    Cumulant,
    Moment,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute k-statistics of CSV columns.
    Compute {
        /// CSV file with a header row of unique column names.
        #[arg(long)]
        input: PathBuf,
        /// Comma-joined columns (names or 1-based positions), repetition allowed,
        /// e.g. `x,x,y`. Repeat the flag for several statistics.
        #[arg(long = "order", required = true)]
        orders: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// none, jackknife, or bootstrap:COUNT
        #[arg(long, default_value = "none")]
        resample: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = kstat_core::kstats::DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Subtract column means before computing (changes order-1 results to 0).
        #[arg(long)]
        center: bool,
    },
    /// Print a formula for a k-statistic, cumulant, or moment.
    Symbolic {
        #[arg(long, value_enum, default_value_t = Kind::Kstat)]
        kind: Kind,
        /// Order k, using variables 1..k.
        #[arg(long, conflicts_with = "indices")]
        order: Option<usize>,
        /// Explicit 1-based variable indices, e.g. `1,1,2`.
        #[arg(long)]
        indices: Option<String>,
        #[arg(long, conflicts_with = "json")]
        latex: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check exact unbiasedness on the built-in discrete distributions.
    Verify {
        /// Orders to check (comma-joined or repeated). Defaults to 1,2,3,4.
        #[arg(long = "order", value_delimiter = ',')]
        orders: Vec<usize>,
        /// Largest number of sample tuples enumerated per cell.
        #[arg(long, default_value_t = kstat_core::oracle::DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Time univariate k-statistics of increasing order on synthetic data.
    Bench {
        #[arg(long, default_value_t = 10)]
        max_order: usize,
        #[arg(long, default_value_t = 1000)]
        rows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Compute {
            input,
            orders,
            format,
            resample,
            seed,
            max_order,
            center,
        } => {
            let resample = commands::parse_resample(&resample, seed)?;
            let opts = commands::ComputeOptions {
                format,
                resample,
                seed,
                max_order,
                center,
            };
            commands::compute(&input, &orders, &opts)
        }
        Command::Symbolic {
            kind,
            order,
            indices,
            latex,
            json,
        } => commands::symbolic(kind, order, indices.as_deref(), latex, json),
        Command::Verify {
            orders,
            budget,
            format,
        } => {
            let orders = if orders.is_empty() {
                vec![1, 2, 3, 4]
            } else {
                orders
            };
            commands::verify(&orders, budget, format)
        }
        Command::Bench {
            max_order,
            rows,
            seed,
            format,
        } => commands::bench(max_order, rows, seed, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
