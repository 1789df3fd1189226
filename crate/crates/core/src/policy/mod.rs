//! Decision rules.
//!
//! K-armed policies implement [`ArmPolicy`]; linear policies implement
//! [`ActionPolicy`]. Every rule breaks ties toward the lowest arm index (or
//! the first action in the offered list), so zero-noise runs are fully
//! deterministic.

mod commit;
mod elimination;
mod linucb;
mod thompson;
mod ucb;

use serde::{Deserialize, Serialize};

pub use commit::{default_budget, ExploreThenCommit};
pub use elimination::{eliminate, SuccessiveElimination};
pub use linucb::{LinUcb, DEFAULT_REINVERT_EVERY};
pub use thompson::GaussianThompson;
pub use ucb::{ucb_argmax, Ucb};

use rand::Rng;

use crate::bonus::{BonusSpec, Design};
use crate::error::{Error, Result};
use crate::model::{BanditInstance, LinearInstance};
use crate::rng::StreamRng;

/// A K-armed policy. `t` is the 1-based round being played.
pub trait ArmPolicy: Send {
    fn select(&mut self, t: u64, rng: &mut StreamRng) -> usize;
    fn update(&mut self, arm: usize, reward: f64, t: u64);
}

/// A policy over finite action lists of `d`-vectors.
pub trait ActionPolicy: Send {
    /// Index into `actions` of the chosen action.
    fn select(&mut self, actions: &[Vec<f64>], t: u64, rng: &mut StreamRng) -> Result<usize>;
    fn update(&mut self, action: &[f64], reward: f64);
    fn elliptical_potential(&self) -> Option<f64> {
        None
    }
}

/// Pull counts and reward sums per arm.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmStats {
    counts: Vec<u64>,
    sums: Vec<f64>,
}

impl ArmStats {
    pub fn new(arms: usize) -> Self {
        Self {
            counts: vec![0; arms],
            sums: vec![0.0; arms],
        }
    }

    /// Seeds the statistics directly; used to probe decision rules.
    pub fn from_parts(counts: Vec<u64>, means: &[f64]) -> Self {
        let sums = counts.iter().zip(means).map(|(&n, &m)| n as f64 * m).collect();
        Self { counts, sums }
    }

    #[inline]
    pub fn record(&mut self, arm: usize, reward: f64) {
        self.counts[arm] += 1;
        self.sums[arm] += reward;
    }

    #[inline]
    pub fn count(&self, arm: usize) -> u64 {
        self.counts[arm]
    }

    /// Running average of the rewards seen on `arm`; zero before any pull.
    #[inline]
    pub fn mean(&self, arm: usize) -> f64 {
        match self.counts[arm] {
            0 => 0.0,
            n => self.sums[arm] / n as f64,
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn arms(&self) -> usize {
        self.counts.len()
    }

    /// Lowest-index arm with the largest empirical mean.
    pub fn best_empirical(&self) -> usize {
        let mut best = 0;
        for k in 1..self.arms() {
            if self.mean(k) > self.mean(best) {
                best = k;
            }
        }
        best
    }
}

/// Uniformly random choice; the no-learning baseline.
#[derive(Debug, Clone)]
pub struct UniformRandom {
    arms: usize,
}

impl UniformRandom {
    pub fn new(arms: usize) -> Self {
        Self { arms }
    }
}

impl ArmPolicy for UniformRandom {
    fn select(&mut self, _t: u64, rng: &mut StreamRng) -> usize {
        rng.random_range(0..self.arms)
    }

    fn update(&mut self, _arm: usize, _reward: f64, _t: u64) {}
}

impl ActionPolicy for UniformRandom {
    fn select(&mut self, actions: &[Vec<f64>], _t: u64, rng: &mut StreamRng) -> Result<usize> {
        if actions.is_empty() {
            return Err(Error::EmptyActionSet);
        }
        Ok(rng.random_range(0..actions.len()))
    }

    fn update(&mut self, _action: &[f64], _reward: f64) {}
}

/// Policy descriptor as it appears in experiment configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum PolicySpec {
    #[serde(rename = "SE")]
    Se { bonus: BonusSpec },
    #[serde(rename = "UCB")]
    Ucb { bonus: BonusSpec },
    #[serde(rename = "TS")]
    Ts { kappa: f64 },
    #[serde(rename = "ETC")]
    Etc {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u64>,
    },
    #[serde(rename = "LinUCB")]
    LinUcb {
        bonus: BonusSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reinvert_every: Option<usize>,
    },
    #[serde(rename = "Uniform")]
    Uniform,
}

impl PolicySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            PolicySpec::Se { .. } => "SE",
            PolicySpec::Ucb { .. } => "UCB",
            PolicySpec::Ts { .. } => "TS",
            PolicySpec::Etc { .. } => "ETC",
            PolicySpec::LinUcb { .. } => "LinUCB",
            PolicySpec::Uniform => "Uniform",
        }
    }

    pub fn design(&self) -> Option<Design> {
        match self {
            PolicySpec::Se { bonus } | PolicySpec::Ucb { bonus } | PolicySpec::LinUcb { bonus, .. } => {
                Some(bonus.design)
            }
            _ => None,
        }
    }

    /// kappa for TS, the budget for ETC, and the bonus knob otherwise.
    pub fn knob(&self) -> f64 {
        match self {
            PolicySpec::Se { bonus } | PolicySpec::Ucb { bonus } | PolicySpec::LinUcb { bonus, .. } => {
                bonus.knob()
            }
            PolicySpec::Ts { kappa } => *kappa,
            PolicySpec::Etc { m } => m.map_or(f64::NAN, |m| m as f64),
            PolicySpec::Uniform => f64::NAN,
        }
    }

    pub fn build_mab(&self, instance: &BanditInstance) -> Result<Box<dyn ArmPolicy>> {
        let arms = instance.arms();
        let horizon = instance.horizon();
        let pull_count_bonus = |bonus: &BonusSpec| {
            if !bonus.design.is_pull_count() {
                return Err(Error::InvalidPolicy(format!(
                    "{} needs a pull-count bonus, not {}",
                    self.kind(),
                    bonus.design.name()
                )));
            }
            bonus.build(horizon, arms, 0)
        };
        Ok(match self {
            PolicySpec::Se { bonus } => Box::new(SuccessiveElimination::new(arms, pull_count_bonus(bonus)?)),
            PolicySpec::Ucb { bonus } => Box::new(Ucb::new(arms, pull_count_bonus(bonus)?)),
            PolicySpec::Ts { kappa } => Box::new(GaussianThompson::new(arms, *kappa)?),
            PolicySpec::Etc { m } => {
                let m = m.unwrap_or_else(|| default_budget(horizon, arms));
                Box::new(ExploreThenCommit::new(arms, m))
            }
            PolicySpec::Uniform => Box::new(UniformRandom::new(arms)),
            PolicySpec::LinUcb { .. } => {
                return Err(Error::InvalidPolicy(
                    "LinUCB needs a linear instance".into(),
                ))
            }
        })
    }

    pub fn build_linear(&self, instance: &LinearInstance) -> Result<Box<dyn ActionPolicy>> {
        match self {
            PolicySpec::LinUcb { bonus, reinvert_every } => {
                if bonus.design != Design::Linear {
                    return Err(Error::InvalidPolicy(format!(
                        "LinUCB needs the linear bonus, not {}",
                        bonus.design.name()
                    )));
                }
                let schedule = bonus.build(instance.horizon(), 0, instance.dim())?;
                Ok(Box::new(LinUcb::new(
                    schedule,
                    reinvert_every.unwrap_or(DEFAULT_REINVERT_EVERY),
                )?))
            }
            PolicySpec::Uniform => Ok(Box::new(UniformRandom::new(0))),
            other => Err(Error::InvalidPolicy(format!(
                "{} cannot run on a linear instance",
                other.kind()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_mean_update() {
        let mut s = ArmStats::from_parts(vec![1, 0], &[0.4, 0.0]);
        s.record(0, 0.8);
        assert_eq!(s.count(0), 2);
        assert!((s.mean(0) - 0.6).abs() < 1e-15);
        assert_eq!(s.mean(1), 0.0);
    }

    #[test]
    fn descriptors_parse_strictly() {
        let p: PolicySpec =
            serde_json::from_str(r#"{"kind":"UCB","bonus":{"design":"new","kappa":0.1}}"#).unwrap();
        assert_eq!(p.kind(), "UCB");
        assert_eq!(p.design(), Some(Design::NewSqrtT));
        let p: PolicySpec = serde_json::from_str(r#"{"kind":"TS","kappa":0.2}"#).unwrap();
        assert_eq!(p.knob(), 0.2);
        let p: PolicySpec = serde_json::from_str(r#"{"kind":"Uniform"}"#).unwrap();
        assert_eq!(p, PolicySpec::Uniform);
        assert!(serde_json::from_str::<PolicySpec>(r#"{"kind":"TS","kapa":0.2}"#).is_err());
        assert!(serde_json::from_str::<PolicySpec>(r#"{"kind":"XYZ"}"#).is_err());
    }

    #[test]
    fn incompatible_designs_are_rejected() {
        let inst = BanditInstance::new(vec![0.1, 0.2], 1.0, 10).unwrap();
        let lin = PolicySpec::Ucb {
            bonus: BonusSpec::kappa(Design::Linear, 1.0),
        };
        assert!(lin.build_mab(&inst).is_err());
        let linucb = PolicySpec::LinUcb {
            bonus: BonusSpec::kappa(Design::Linear, 1.0),
            reinvert_every: None,
        };
        assert!(linucb.build_mab(&inst).is_err());
        assert!(PolicySpec::Ts { kappa: -1.0 }.build_mab(&inst).is_err());
    }
}
