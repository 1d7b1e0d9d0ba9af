mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Range;

/// Exact termirial (simplicial polytopic number) toolkit.
#[derive(Debug, Parser)]
#[command(name = "termirial", version)]
pub struct Cli {
    /// Emit one JSON object per invocation instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Group digits in text output (4 421 275).
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Work budget for oracles, the loop simulator and figure cells.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Largest order accepted on the command line.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_order: i64,

    /// Largest number of instances a `check` sweep may visit.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_sweep: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the order-p termirial of n.
    #[command(allow_negative_numbers = true)]
    Eval {
        n: u64,
        p: i64,
        /// Also run the literal nested-sum oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Sweep an identity over ranges of n, m and p.
    Check {
        #[arg(value_enum)]
        identity: Identity,
        /// Range a..b (inclusive) or a single value.
        #[arg(long, allow_hyphen_values = true, default_value = "1..15")]
        n: Range,
        #[arg(long, allow_hyphen_values = true, default_value = "1..15")]
        m: Range,
        #[arg(long, allow_hyphen_values = true, default_value = "-1..7")]
        p: Range,
        /// Print every instance, not just the summary.
        #[arg(long)]
        verbose: bool,
    },
    /// Enumerate the p-subsets of {1..n} grouped by smallest element.
    Enum {
        n: u64,
        p: u64,
        /// List every subset.
        #[arg(long)]
        list: bool,
    },
    /// Analyze a chained loop nest read from a .loop file or stdin.
    Loops {
        /// Input file; `-` or absent reads stdin.
        file: Option<PathBuf>,
        /// Value of the bound parameter, overriding the file.
        #[arg(long)]
        n: Option<u64>,
        /// Also execute the nest and compare counts.
        #[arg(long)]
        simulate: bool,
    },
    /// Draw the grey-square figure of the order-p termirial of n.
    Fractal {
        n: u64,
        p: u32,
        #[arg(long, value_enum, default_value_t = FigureFormat::Svg)]
        format: FigureFormat,
        /// Report the surface ratio against order p-1.
        #[arg(long)]
        report: bool,
        /// Write the figure to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Pascal,
    Newton,
    Split1,
    Split2,
    Recurrence,
    Closedform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureFormat {
    Svg,
    Ascii,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli);
    outcome.emit(cli.json)
}
