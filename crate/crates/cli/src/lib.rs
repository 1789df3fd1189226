//! The `tailrisk` command line: config-driven simulation, reference-table
//! reproduction, bound evaluation and the fragility study.
//!
//! Exit codes: 0 on success, 2 for invalid configs or arguments, 3 for I/O
//! failures.

pub mod commands;
pub mod config;
mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "tailrisk", version, about = "Regret-distribution experiments for stochastic bandits")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Experiment config (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Master seed; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true, env = "BANDIT_WORKERS")]
    pub workers: Option<usize>,
    /// Replications; overrides the config and the built-in defaults.
    #[arg(long, global = true)]
    pub replications: Option<u64>,
}

impl GlobalArgs {
    pub fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment in --config; writes results.csv, summary.json and
    /// (with thresholds) tail.csv.
    Simulate,
    /// Rerun a reference grid.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
    /// Evaluate a closed-form tail bound over a threshold grid.
    Bounds(BoundArgs),
    /// Small-eta and misspecified-noise tail study; writes tail.csv.
    Fragility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Table2,
    Fig1,
    Fig2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "PascalCase")]
pub enum BoundArg {
    ThmK,
    ThmKOpt,
    ThmAnyTime,
    ThmLinear,
    NeatForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "PascalCase")]
pub enum VariantArg {
    ThmK,
    ThmKOpt,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(value_enum, ignore_case = true)]
    pub name: BoundArg,
    /// Number of arms K.
    #[arg(short = 'K', long)]
    pub arms: Option<usize>,
    /// Horizon T.
    #[arg(short = 'T', long)]
    pub horizon: u64,
    /// Dimension d (linear bound).
    #[arg(short = 'd', long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub eta1: Option<f64>,
    #[arg(long)]
    pub eta2: Option<f64>,
    /// K-armed bound simplified by the neat form.
    #[arg(long, value_enum, default_value = "ThmK")]
    pub variant: VariantArg,
    /// Explicit thresholds; otherwise an even grid from --x-min to --x-max.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub x_min: f64,
    /// Defaults to T.
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Print to stdout instead of writing <out>/bounds.csv.
    #[arg(long)]
    pub stdout: bool,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Simulate => commands::simulate(&cli.global),
        Command::Reproduce { target } => commands::reproduce(&cli.global, *target),
        Command::Bounds(args) => commands::bounds(&cli.global, args),
        Command::Fragility => commands::fragility(&cli.global),
    }
}
