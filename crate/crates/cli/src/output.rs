//! CSV and JSON writers. Floats go out as `{:.16e}` (17 significant digits,
//! round-trip exact) unless a layout calls for fixed decimals.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use tailrisk_core::analysis::{Distribution, EmpiricalTail, Histogram, TailReport};
use tailrisk_core::{EpisodeResult, PolicySpec};

use crate::error::{CliError, CliResult};

pub const RESULTS_HEADER: &str =
    "path_id,policy,design,kappa_or_eta,K,T,sigma0,cumulative_reward,pseudo_regret,empirical_regret,pulls";

pub fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:.16e}")
    }
}

/// A buffered file that remembers its path for error reporting.
pub struct Sink {
    path: PathBuf,
    out: BufWriter<File>,
}

impl Sink {
    pub fn create(path: impl Into<PathBuf>) -> CliResult<Self> {
        let path = path.into();
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
        }
        let file = File::create(&path).map_err(CliError::io(&path))?;
        Ok(Self {
            path,
            out: BufWriter::new(file),
        })
    }

    pub fn line(&mut self, text: &str) -> CliResult<()> {
        writeln!(self.out, "{text}").map_err(CliError::io(&self.path))
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.out.flush().map_err(CliError::io(&self.path))
    }
}

/// Fixed per-run columns of results.csv.
pub struct RunLabel {
    pub policy: String,
    pub design: String,
    pub knob: f64,
    pub arms: usize,
    pub horizon: u64,
    pub sigma0: f64,
}

impl RunLabel {
    pub fn new(policy: &PolicySpec, arms: usize, horizon: u64, sigma0: f64) -> Self {
        Self {
            policy: policy.kind().to_string(),
            design: policy.design().map_or("", |d| d.name()).to_string(),
            knob: policy.knob(),
            arms,
            horizon,
            sigma0,
        }
    }

    pub fn row(&self, path: u64, r: &EpisodeResult) -> String {
        let pulls: Vec<String> = r.pulls.iter().map(u64::to_string).collect();
        format!(
            "{path},{},{},{},{},{},{},{},{},{},{}",
            self.policy,
            self.design,
            num(self.knob),
            self.arms,
            self.horizon,
            num(self.sigma0),
            num(r.cumulative_reward),
            num(r.pseudo_regret),
            num(r.empirical_regret),
            pulls.join(";")
        )
    }
}

pub const TAIL_HEADER: &str =
    "threshold,exceed,total,empirical_prob,ci_low,ci_high,bound_name,bound_value,bound_clamped,within_bound";

pub fn tail_row(tail: &EmpiricalTail, report: Option<&TailReport>) -> String {
    let bound = match report {
        Some(r) => format!(
            "{},{},{},{}",
            r.bound_name.as_str(),
            num(r.bound_value),
            num(r.bound_clamped),
            r.bound_holds()
        ),
        None => ",,,".into(),
    };
    format!(
        "{},{},{},{},{},{},{bound}",
        num(tail.threshold),
        tail.exceed,
        tail.total,
        num(tail.prob),
        num(tail.ci_low),
        num(tail.ci_high)
    )
}

pub fn write_histogram(path: &Path, hist: &Histogram) -> CliResult<()> {
    let mut sink = Sink::create(path)?;
    sink.line("bin,lo,hi,count,fraction")?;
    let total = hist.total() as f64;
    for (bin, &count) in hist.counts.iter().enumerate() {
        let (lo, hi) = hist.edges(bin);
        sink.line(&format!("{bin},{},{},{count},{}", num(lo), num(hi), num(count as f64 / total)))?;
    }
    sink.finish()
}

/// JSON summary of one batch.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryJson {
    pub policy: String,
    pub design: Option<String>,
    pub kappa: f64,
    pub replications: usize,
    pub mean_reward: f64,
    pub std: f64,
    pub quantiles: Vec<(f64, f64)>,
    pub mean_pseudo_regret: f64,
    pub mean_empirical_regret: f64,
}

impl SummaryJson {
    pub fn new(policy: String, design: Option<String>, kappa: f64, reward: &Distribution, pseudo: f64, empirical: f64) -> Self {
        Self {
            policy,
            design,
            kappa,
            replications: reward.count,
            mean_reward: reward.mean,
            std: reward.std,
            quantiles: reward.quantiles.clone(),
            mean_pseudo_regret: pseudo,
            mean_empirical_regret: empirical,
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut sink = Sink::create(path)?;
    let text = serde_json::to_string_pretty(value).expect("summaries serialize");
    sink.line(&text)?;
    sink.finish()
}
