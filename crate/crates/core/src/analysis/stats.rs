use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EpisodeResult;

pub const QUANTILE_LEVELS: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    debug_assert!(n > 0);
    let h = (n - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator; 0 for one sample).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// `(level, value)` pairs at [`QUANTILE_LEVELS`].
    pub quantiles: Vec<(f64, f64)>,
}

pub fn describe(values: &[f64]) -> Result<Distribution> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot describe an empty sample".into()));
    }
    let n = values.len();
    let mean = compensated_sum(values.iter().copied()) / n as f64;
    let std = if n > 1 {
        (compensated_sum(values.iter().map(|v| (v - mean) * (v - mean))) / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Distribution {
        count: n,
        mean,
        std,
        min: sorted[0],
        max: sorted[n - 1],
        quantiles: QUANTILE_LEVELS
            .iter()
            .map(|&q| (q, quantile_sorted(&sorted, q)))
            .collect(),
    })
}

/// Reward and regret statistics of a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub replications: usize,
    pub reward: Distribution,
    pub pseudo_regret: Distribution,
    pub empirical_regret: Distribution,
}

impl RunSummary {
    pub fn mean_reward(&self) -> f64 {
        self.reward.mean
    }

    pub fn mean_pseudo_regret(&self) -> f64 {
        self.pseudo_regret.mean
    }
}

pub fn summarize(results: &[EpisodeResult]) -> Result<RunSummary> {
    if results.is_empty() {
        return Err(Error::InvalidArgument("cannot summarize zero episodes".into()));
    }
    let pick = |f: fn(&EpisodeResult) -> f64| results.iter().map(f).collect::<Vec<_>>();
    Ok(RunSummary {
        replications: results.len(),
        reward: describe(&pick(|r| r.cumulative_reward))?,
        pseudo_regret: describe(&pick(|r| r.pseudo_regret))?,
        empirical_regret: describe(&pick(|r| r.empirical_regret))?,
    })
}
