//! Command-line front end over `nstep-core`.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.

pub mod args;
pub mod bfile;
mod commands;
pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, Outcome, UsageError};
pub use output::{OutputFormat, Report};

/// Largest |r| evaluated over the integers without `--mod`.
pub const EXACT_LIMIT: i64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "nstep", version, about = "n-step Fibonacci, Lucas and generalized sequences")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

/// Family, order and (for W) seeds.
#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// U (n-step Fibonacci), V (n-step Lucas) or W (generalized).
    #[arg(long, default_value = "U")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// W_0,...,W_{n-1} for family W.
    #[arg(long, allow_hyphen_values = true)]
    pub seeds: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    All,
    Doubling,
    Matrix,
    Naive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms r = from..to of one sequence.
    Seq {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        from: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10)]
        to: i64,
    },
    /// U and V rows for r = -4..10 at each order.
    Table {
        /// Orders, e.g. `2,3,4,5` or `2..6`.
        #[arg(long, default_value = "2,3,4,5")]
        n: String,
    },
    /// Verify catalog identities exactly over a parameter grid.
    Check {
        /// Every registered identity (readings excluded).
        #[arg(long)]
        all: bool,
        #[arg(long = "id")]
        ids: Vec<String>,
        /// Print the registry index and exit.
        #[arg(long)]
        list: bool,
        /// Run the competing readings of ambiguous displays and report which hold.
        #[arg(long)]
        readings: bool,
        /// Restrict to these families, e.g. `U,V`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "2..6")]
        n: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-10..10")]
        r: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-10..10")]
        s: String,
        #[arg(long, default_value = "0..8")]
        k: String,
        /// Random W seed sets per order.
        #[arg(long, default_value_t = 5)]
        random: usize,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// One term by shift-vector doubling.
    Term {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Work modulo m instead of over the integers.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Generating function and its leading coefficients.
    Gf {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 11)]
        terms: usize,
    },
    /// sum_{j=0..k} x^j W_j in closed form next to the direct sum.
    Sum {
        #[command(flatten)]
        seq: SeqArgs,
        /// Rational p/q or an integer.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        k: u32,
    },
    /// Time and count ring multiplications for each evaluation route.
    Bench {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, value_enum, default_value_t = Algo::All)]
        algo: Algo,
        /// Timed repetitions; the best is reported.
        #[arg(long, default_value_t = 5)]
        repeat: u32,
    },
    /// Compare an OEIS b-file against the engine.
    VerifyBfile {
        path: std::path::PathBuf,
        #[command(flatten)]
        seq: SeqArgs,
        /// Added to each file index to get the index used here.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        offset: i64,
    },
}
