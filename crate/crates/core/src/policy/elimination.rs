use super::{ArmPolicy, ArmStats};
use crate::bonus::BonusSchedule;
use crate::rng::StreamRng;

/// Successive elimination.
///
/// Plays the active arms in ascending index order, one pull each per phase.
/// At the end of every complete phase it drops each arm whose upper
/// confidence value is strictly below some active arm's lower confidence
/// value, judged on the estimates as they stand at phase end. A phase cut
/// short by the horizon simply stops.
///
/// With an any-time schedule the radius is evaluated at the elapsed round
/// count. That pairing can discard the optimal arm early and is exposed for
/// demonstration only.
#[derive(Debug, Clone)]
pub struct SuccessiveElimination {
    bonus: BonusSchedule,
    stats: ArmStats,
    active: Vec<usize>,
    cursor: usize,
}

impl SuccessiveElimination {
    pub fn new(arms: usize, bonus: BonusSchedule) -> Self {
        Self {
            bonus,
            stats: ArmStats::new(arms),
            active: (0..arms).collect(),
            cursor: 0,
        }
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn stats(&self) -> &ArmStats {
        &self.stats
    }

    fn end_phase(&mut self, t: u64) {
        let arms = self.stats.arms();
        let mut means = vec![0.0; arms];
        let mut radii = vec![f64::INFINITY; arms];
        for &k in &self.active {
            means[k] = self.stats.mean(k);
            radii[k] = self.bonus.radius(self.stats.count(k), t);
        }
        self.active = eliminate(&self.active, &means, &radii);
    }
}

/// Arms of `active` that survive one elimination pass. `means` and `radii`
/// are indexed by arm. An arm `k` is removed when some active `k'` has
/// `means[k'] - radii[k'] > means[k] + radii[k]`.
pub fn eliminate(active: &[usize], means: &[f64], radii: &[f64]) -> Vec<usize> {
    let best_lower = active
        .iter()
        .map(|&k| means[k] - radii[k])
        .fold(f64::NEG_INFINITY, f64::max);
    active
        .iter()
        .copied()
        .filter(|&k| !(best_lower > means[k] + radii[k]))
        .collect()
}

impl ArmPolicy for SuccessiveElimination {
    #[inline]
    fn select(&mut self, _t: u64, _rng: &mut StreamRng) -> usize {
        self.active[self.cursor]
    }

    fn update(&mut self, arm: usize, reward: f64, t: u64) {
        self.stats.record(arm, reward);
        self.cursor += 1;
        if self.cursor == self.active.len() {
            self.cursor = 0;
            self.end_phase(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::PathSeed;

    #[test]
    fn elimination_examples() {
        assert_eq!(eliminate(&[0, 1], &[0.9, 0.1], &[0.1, 0.1]), vec![0]);
        assert_eq!(eliminate(&[0, 1], &[0.9, 0.1], &[0.5, 0.5]), vec![0, 1]);
        assert_eq!(
            eliminate(&[0, 1, 2, 3], &[0.9, 0.5, 0.5, 0.1], &[0.1; 4]),
            vec![0]
        );
    }

    #[test]
    fn exact_ties_do_not_eliminate() {
        // 0.75 - 0.25 == 0.25 + 0.25 exactly
        assert_eq!(eliminate(&[0, 1], &[0.75, 0.25], &[0.25, 0.25]), vec![0, 1]);
    }

    #[test]
    fn only_active_arms_vote() {
        // arm 0 is already gone; its huge lower bound must not remove arm 2
        assert_eq!(eliminate(&[1, 2], &[9.0, 0.5, 0.45], &[0.0, 0.1, 0.1]), vec![1, 2]);
    }

    #[test]
    fn sweeps_in_index_order_and_never_revisits() {
        let bonus = BonusSchedule::standard(1.0, 0.01, 100).unwrap();
        let mut se = SuccessiveElimination::new(3, bonus);
        let mut rng = PathSeed::new(0, 0).policy();
        let mut seq = Vec::new();
        let rewards = [1.0, 0.0, 0.5];
        for t in 1..=12 {
            let arm = se.select(t, &mut rng);
            seq.push(arm);
            se.update(arm, rewards[arm], t);
        }
        // first phase 0,1,2; lcb(arm 0) = 1 - 0.215 beats both others' ucb
        assert_eq!(&seq[..3], &[0, 1, 2]);
        assert!(seq[3..].iter().all(|&a| a == 0));
        assert_eq!(se.active(), &[0]);
    }
}
