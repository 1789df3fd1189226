//! Environment descriptions and exact regret accounting.
//!
//! Regret splits into a pseudo part, `R = sum_k n_k * gap_k`, and the genuine
//! noise `N`, the sum of the reward noises the policy happened to observe.
//! The realised (empirical) regret is `R - N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm slack accepted on action vectors.
pub const ACTION_NORM_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseFamily {
    #[default]
    Gaussian,
}

/// A K-armed stochastic bandit with a fixed horizon.
///
/// `noise_scale` is the true standard deviation of the environment noise.
/// Policies carry their own assumed scale, which may differ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BanditInstance {
    means: Vec<f64>,
    noise_scale: f64,
    noise_family: NoiseFamily,
    horizon: u64,
}

impl BanditInstance {
    pub fn new(means: Vec<f64>, noise_scale: f64, horizon: u64) -> Result<Self> {
        let arms = means.len();
        if arms < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 arms, got {arms}"
            )));
        }
        if let Some(bad) = means
            .iter()
            .find(|m| !m.is_finite() || **m < 0.0 || **m > 1.0)
        {
            return Err(Error::InvalidInstance(format!(
                "mean {bad} outside [0, 1]"
            )));
        }
        if !noise_scale.is_finite() || noise_scale < 0.0 {
            return Err(Error::InvalidInstance(format!(
                "noise scale {noise_scale} must be finite and non-negative"
            )));
        }
        if horizon < 3 || horizon < arms as u64 {
            return Err(Error::InvalidInstance(format!(
                "horizon {horizon} must be at least 3 and at least the arm count {arms}"
            )));
        }
        Ok(Self {
            means,
            noise_scale,
            noise_family: NoiseFamily::Gaussian,
            horizon,
        })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn arms(&self) -> usize {
        self.means.len()
    }

    pub fn noise_scale(&self) -> f64 {
        self.noise_scale
    }

    pub fn noise_family(&self) -> NoiseFamily {
        self.noise_family
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn best_mean(&self) -> f64 {
        best_mean(&self.means)
    }

    /// Gap of `arm` to the best mean. Gaps are never cached.
    pub fn gap(&self, arm: usize) -> f64 {
        self.best_mean() - self.means[arm]
    }

    /// Expected reward of always pulling an optimal arm.
    pub fn optimal_reward(&self) -> f64 {
        self.best_mean() * self.horizon as f64
    }

    pub(crate) fn with_horizon(&self, horizon: u64) -> Result<Self> {
        Self::new(self.means.clone(), self.noise_scale, horizon)
    }
}

fn best_mean(means: &[f64]) -> f64 {
    means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Where a linear episode gets its action sets from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ActionSets {
    /// One explicit list reused every round.
    Fixed(Vec<Vec<f64>>),
    /// One explicit list per round; must cover the whole horizon.
    PerRound(Vec<Vec<Vec<f64>>>),
    /// `count` uniform points on the unit sphere drawn once per episode.
    RandomFixed { count: usize },
    /// `count` fresh uniform points on the unit sphere every round.
    RandomPerRound { count: usize },
}

/// A stochastic linear bandit: reward `theta . a + noise`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearInstance {
    theta: Vec<f64>,
    actions: ActionSets,
    noise_scale: f64,
    horizon: u64,
}

impl LinearInstance {
    pub fn new(theta: Vec<f64>, actions: ActionSets, noise_scale: f64, horizon: u64) -> Result<Self> {
        let dim = theta.len();
        if dim == 0 {
            return Err(Error::InvalidInstance("theta must be non-empty".into()));
        }
        if let Some(bad) = theta.iter().find(|v| !v.is_finite() || v.abs() > 1.0) {
            return Err(Error::InvalidInstance(format!(
                "theta component {bad} violates the sup-norm bound 1"
            )));
        }
        if !noise_scale.is_finite() || noise_scale < 0.0 {
            return Err(Error::InvalidInstance(format!(
                "noise scale {noise_scale} must be finite and non-negative"
            )));
        }
        if horizon < dim as u64 || horizon == 0 {
            return Err(Error::InvalidInstance(format!(
                "horizon {horizon} must be at least the dimension {dim}"
            )));
        }
        let check_set = |set: &[Vec<f64>]| -> Result<()> {
            if set.is_empty() {
                return Err(Error::EmptyActionSet);
            }
            for a in set {
                if a.len() != dim {
                    return Err(Error::LengthMismatch {
                        expected: dim,
                        found: a.len(),
                    });
                }
                check_action_norm(a)?;
            }
            Ok(())
        };
        match &actions {
            ActionSets::Fixed(set) => check_set(set)?,
            ActionSets::PerRound(sets) => {
                if (sets.len() as u64) < horizon {
                    return Err(Error::InvalidInstance(format!(
                        "{} per-round action sets cannot cover horizon {horizon}",
                        sets.len()
                    )));
                }
                for set in sets {
                    check_set(set)?;
                }
            }
            ActionSets::RandomFixed { count } | ActionSets::RandomPerRound { count } => {
                if *count == 0 {
                    return Err(Error::EmptyActionSet);
                }
            }
        }
        Ok(Self {
            theta,
            actions,
            noise_scale,
            horizon,
        })
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn actions(&self) -> &ActionSets {
        &self.actions
    }

    pub fn noise_scale(&self) -> f64 {
        self.noise_scale
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// Number of actions offered per round.
    pub fn actions_per_round(&self) -> usize {
        match &self.actions {
            ActionSets::Fixed(set) => set.len(),
            ActionSets::PerRound(sets) => sets.iter().map(Vec::len).max().unwrap_or(0),
            ActionSets::RandomFixed { count } | ActionSets::RandomPerRound { count } => *count,
        }
    }

    pub(crate) fn with_horizon(&self, horizon: u64) -> Result<Self> {
        Self::new(self.theta.clone(), self.actions.clone(), self.noise_scale, horizon)
    }
}

pub(crate) fn check_action_norm(a: &[f64]) -> Result<()> {
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !norm.is_finite() || norm > 1.0 + ACTION_NORM_SLACK {
        return Err(Error::ActionNorm(norm));
    }
    Ok(())
}

/// Outcome of one simulated episode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    /// Pull count per arm (per action index for linear episodes).
    pub pulls: Vec<u64>,
    pub pseudo_regret: f64,
    /// Genuine noise: sum of observed reward noises.
    pub noise_sum: f64,
    /// `pseudo_regret - noise_sum`.
    pub empirical_regret: f64,
    pub cumulative_reward: f64,
    /// Expected reward of the per-round optimal action, summed over rounds.
    pub optimal_reward: f64,
    pub arm_sequence: Option<Vec<u32>>,
    /// Sum of `a_t' V_{t-1}^{-1} a_t` along the episode (linear UCB only).
    pub elliptical_potential: Option<f64>,
}

impl EpisodeResult {
    pub fn horizon(&self) -> u64 {
        self.pulls.iter().sum()
    }
}

/// `sum_k pulls_k * (max(means) - means_k)`.
pub fn pseudo_regret(pulls: &[u64], means: &[f64]) -> Result<f64> {
    if pulls.len() != means.len() {
        return Err(Error::LengthMismatch {
            expected: means.len(),
            found: pulls.len(),
        });
    }
    let best = best_mean(means);
    Ok(pulls
        .iter()
        .zip(means)
        .filter(|(&n, _)| n > 0)
        .map(|(&n, &m)| n as f64 * (best - m))
        .sum())
}

/// Rebuilds an [`EpisodeResult`] from a per-step `(arm, reward)` trace.
pub fn decompose_regret(trace: &[(usize, f64)], instance: &BanditInstance) -> Result<EpisodeResult> {
    if trace.len() as u64 != instance.horizon() {
        return Err(Error::LengthMismatch {
            expected: instance.horizon() as usize,
            found: trace.len(),
        });
    }
    let arms = instance.arms();
    let means = instance.means();
    let mut pulls = vec![0u64; arms];
    let mut noise_sum = 0.0;
    let mut cumulative_reward = 0.0;
    let mut sequence = Vec::with_capacity(trace.len());
    for &(arm, reward) in trace {
        if arm >= arms {
            return Err(Error::ArmOutOfRange { arm, arms });
        }
        pulls[arm] += 1;
        noise_sum += reward - means[arm];
        cumulative_reward += reward;
        sequence.push(arm as u32);
    }
    let pseudo = pseudo_regret(&pulls, means)?;
    Ok(EpisodeResult {
        pulls,
        pseudo_regret: pseudo,
        noise_sum,
        empirical_regret: pseudo - noise_sum,
        cumulative_reward,
        optimal_reward: instance.optimal_reward(),
        arm_sequence: Some(sequence),
        elliptical_potential: None,
    })
}
