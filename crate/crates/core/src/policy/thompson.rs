use rand_distr::{Distribution, StandardNormal};

use super::ArmPolicy;
use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// Thompson sampling with a `N(0, 1)` prior on every mean and a Gaussian
/// likelihood of variance `kappa^2`.
///
/// After `n` observations with sum `S` the posterior is
/// `N(S / (kappa^2 + n), kappa^2 / (kappa^2 + n))`.
#[derive(Debug, Clone)]
pub struct GaussianThompson {
    noise_var: f64,
    counts: Vec<u64>,
    sums: Vec<f64>,
}

impl GaussianThompson {
    pub fn new(arms: usize, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidPolicy(format!("TS kappa must be positive, got {kappa}")));
        }
        Ok(Self {
            noise_var: kappa * kappa,
            counts: vec![0; arms],
            sums: vec![0.0; arms],
        })
    }

    /// Posterior `(mean, variance)` of `arm`.
    pub fn posterior(&self, arm: usize) -> (f64, f64) {
        let denom = self.noise_var + self.counts[arm] as f64;
        (self.sums[arm] / denom, self.noise_var / denom)
    }
}

impl ArmPolicy for GaussianThompson {
    fn select(&mut self, _t: u64, rng: &mut StreamRng) -> usize {
        let mut best = 0;
        let mut best_draw = f64::NEG_INFINITY;
        for k in 0..self.counts.len() {
            let (mean, var) = self.posterior(k);
            let z: f64 = StandardNormal.sample(rng);
            let draw = mean + var.sqrt() * z;
            if draw > best_draw {
                best_draw = draw;
                best = k;
            }
        }
        best
    }

    #[inline]
    fn update(&mut self, arm: usize, reward: f64, _t: u64) {
        self.counts[arm] += 1;
        self.sums[arm] += reward;
    }
}
