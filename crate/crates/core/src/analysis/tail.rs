use serde::{Deserialize, Serialize};

use super::bounds::{BoundName, BoundValue};
use crate::error::{Error, Result};
use crate::model::EpisodeResult;

/// Two-sided 95% normal quantile.
pub const WILSON_Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let hi = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    (lo, hi)
}

/// Which per-path regret the tail is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailFunctional {
    #[default]
    Pseudo,
    Empirical,
}

impl TailFunctional {
    pub fn of(self, r: &EpisodeResult) -> f64 {
        match self {
            TailFunctional::Pseudo => r.pseudo_regret,
            TailFunctional::Empirical => r.empirical_regret,
        }
    }
}

/// Fraction of paths at or above a threshold, with its Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalTail {
    pub threshold: f64,
    pub exceed: u64,
    pub total: u64,
    pub prob: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl EmpiricalTail {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }
}

/// Exceedance frequencies `#{v >= x} / n` of `values` at each threshold.
pub fn exceedance(values: &[f64], thresholds: &[f64]) -> Result<Vec<EmpiricalTail>> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("no samples for a tail estimate".into()));
    }
    if thresholds.is_empty() {
        return Err(Error::InvalidArgument("no tail thresholds given".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let total = sorted.len() as u64;
    Ok(thresholds
        .iter()
        .map(|&x| {
            let below = sorted.partition_point(|&v| v < x) as u64;
            let exceed = total - below;
            let (ci_low, ci_high) = wilson_interval(exceed, total, WILSON_Z95);
            EmpiricalTail {
                threshold: x,
                exceed,
                total,
                prob: exceed as f64 / total as f64,
                ci_low,
                ci_high,
            }
        })
        .collect())
}

pub fn empirical_tail(
    results: &[EpisodeResult],
    functional: TailFunctional,
    thresholds: &[f64],
) -> Result<Vec<EmpiricalTail>> {
    let values: Vec<f64> = results.iter().map(|r| functional.of(r)).collect();
    exceedance(&values, thresholds)
}

/// `points` evenly spaced thresholds from `lo` to `hi` inclusive.
pub fn threshold_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// An empirical tail paired with a closed-form bound at the same threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub threshold: f64,
    pub empirical_prob: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub bound_value: f64,
    pub bound_clamped: f64,
    pub bound_name: BoundName,
}

impl TailReport {
    pub fn new(tail: &EmpiricalTail, name: BoundName, bound: BoundValue) -> Self {
        Self {
            threshold: tail.threshold,
            empirical_prob: tail.prob,
            ci_low: tail.ci_low,
            ci_high: tail.ci_high,
            bound_value: bound.raw,
            bound_clamped: bound.clamped(),
            bound_name: name,
        }
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }

    /// Whether the empirical frequency sits under the clamped bound, up to
    /// the Wilson half-width.
    pub fn bound_holds(&self) -> bool {
        self.empirical_prob <= self.bound_clamped + self.half_width()
    }
}
