use super::{ArmPolicy, ArmStats};
use crate::bonus::BonusSchedule;
use crate::rng::StreamRng;

/// Upper confidence bound: pull `argmax_k mean_k + rad(n_k)`.
///
/// Unpulled arms have an infinite index, so the first K rounds play arms
/// `0..K` in order.
#[derive(Debug, Clone)]
pub struct Ucb {
    bonus: BonusSchedule,
    stats: ArmStats,
}

impl Ucb {
    pub fn new(arms: usize, bonus: BonusSchedule) -> Self {
        Self {
            bonus,
            stats: ArmStats::new(arms),
        }
    }

    pub fn with_stats(stats: ArmStats, bonus: BonusSchedule) -> Self {
        Self { bonus, stats }
    }

    pub fn stats(&self) -> &ArmStats {
        &self.stats
    }
}

/// Lowest-index maximiser of `stats.mean(k) + shift + bonus.radius(n_k, t)`.
#[inline]
pub fn ucb_argmax(stats: &ArmStats, bonus: &BonusSchedule, shift: f64, t: u64) -> usize {
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for k in 0..stats.arms() {
        let value = stats.mean(k) + shift + bonus.radius(stats.count(k), t);
        if value > best_value {
            best_value = value;
            best = k;
        }
    }
    best
}

impl ArmPolicy for Ucb {
    #[inline]
    fn select(&mut self, t: u64, _rng: &mut StreamRng) -> usize {
        ucb_argmax(&self.stats, &self.bonus, 0.0, t)
    }

    #[inline]
    fn update(&mut self, arm: usize, reward: f64, _t: u64) {
        self.stats.record(arm, reward);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::PathSeed;

    #[test]
    fn first_rounds_cover_every_arm() {
        let bonus = BonusSchedule::new_sqrt_t(1.0, 4.0, 50).unwrap();
        let mut ucb = Ucb::new(5, bonus);
        let mut rng = PathSeed::new(0, 0).policy();
        for t in 1..=5u64 {
            let arm = ucb.select(t, &mut rng);
            assert_eq!(arm, (t - 1) as usize);
            ucb.update(arm, 10.0 * t as f64, t);
        }
    }

    #[test]
    fn ties_go_to_the_lower_index() {
        let bonus = BonusSchedule::standard(1.0, 1.0, 50).unwrap();
        let stats = ArmStats::from_parts(vec![3, 3, 3], &[0.5, 0.5, 0.5]);
        assert_eq!(ucb_argmax(&stats, &bonus, 0.0, 10), 0);
        let stats = ArmStats::from_parts(vec![3, 2, 2], &[0.5, 0.5, 0.5]);
        assert_eq!(ucb_argmax(&stats, &bonus, 0.0, 10), 1);
    }
}
