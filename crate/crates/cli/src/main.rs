use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
mod config;

use config::RunConfig;

#[derive(Parser)]
#[command(name = "hallwc")]
#[command(about = "Hall algebras, HN filtrations and wall-crossing checks for type-A quivers")]
#[command(version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct GlobalArgs {
    /// Quiver preset
    #[arg(long, global = true, value_enum, default_value_t = QuiverArg::A2)]
    pub quiver: QuiverArg,

    /// Characteristic of the finite field
    #[arg(long, global = true, default_value_t = 2)]
    pub prime: u32,

    /// Total dimension cap
    #[arg(long, global = true, default_value_t = 6)]
    pub dim_cap: usize,

    /// Shift window for derived computations, as LO:HI
    #[arg(long, global = true, default_value = "-1:1", allow_hyphen_values = true)]
    pub window: String,

    /// Stability spec (JSON). Without it the standard heart with Z(S_k) = (rank + 1 - 2k, 1) is used
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for sampled verifiers
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuiverArg {
    A1,
    A2,
    A3,
    A4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposables of the catalog
    Indec,
    /// Hall number F^L_{M_1..M_n} counting filtrations of L
    Hallnum {
        /// Comma-separated factor classes, top first
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Derived Hall number of L with a triangle M -> L -> N
    Dhallnum {
        /// M,N
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Product of two basis elements
    Product {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Multiply in the derived Hall algebra
        #[arg(long)]
        derived: bool,
    },
    /// Harder-Narasimhan filtration of an object
    Hn {
        #[arg(long)]
        object: String,
        /// Use the derived stability condition
        #[arg(long)]
        derived: bool,
    },
    /// Run one identity verifier
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        /// Class for hn-fine and reineke-derived, comma-separated
        #[arg(long, default_value = "1,1")]
        gamma: String,
        /// Window index for hn-fine and reineke-derived
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i32,
        /// Ray direction for left-part, as RE,IM
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        direction: String,
    },
    /// Classify the stability condition of --spec into a table row
    ClassifyA2,
    /// Realize and cross-validate every row of the A2 table
    TableA2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Reciprocity,
    WallCrossingAbelian,
    Pentagon,
    Associativity,
    LemmaWc,
    HnFine,
    ReinekeDerived,
    WallCrossingDerived,
    LeftPart,
    LemmaSuite,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cfg, &cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.summary.is_empty() {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::error_code(&e))
        }
    }
}
