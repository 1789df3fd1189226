use super::{ArmPolicy, ArmStats};
use crate::rng::StreamRng;

/// `ceil(T^{2/3} / K)` pulls per arm.
pub fn default_budget(horizon: u64, arms: usize) -> u64 {
    ((horizon as f64).powf(2.0 / 3.0) / arms as f64).ceil() as u64
}

/// Explore-then-commit: round robin for `m * K` rounds, then the empirical
/// best arm (lowest index on ties) for the rest of the episode.
#[derive(Debug, Clone)]
pub struct ExploreThenCommit {
    budget: u64,
    stats: ArmStats,
    committed: Option<usize>,
}

impl ExploreThenCommit {
    pub fn new(arms: usize, budget: u64) -> Self {
        Self {
            budget,
            stats: ArmStats::new(arms),
            committed: None,
        }
    }

    pub fn committed(&self) -> Option<usize> {
        self.committed
    }
}

impl ArmPolicy for ExploreThenCommit {
    fn select(&mut self, t: u64, _rng: &mut StreamRng) -> usize {
        let arms = self.stats.arms() as u64;
        if t <= self.budget * arms {
            return ((t - 1) % arms) as usize;
        }
        *self
            .committed
            .get_or_insert_with(|| self.stats.best_empirical())
    }

    fn update(&mut self, arm: usize, reward: f64, _t: u64) {
        self.stats.record(arm, reward);
    }
}
