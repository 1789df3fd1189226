//! Reward generation.
//!
//! Noise is Gaussian with the instance's true scale `sigma0`. Only the pulled
//! arm is sampled, one draw per round, from the environment stream.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::model::{check_action_norm, BanditInstance, LinearInstance};

#[inline]
pub(crate) fn gaussian_noise<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    scale * z
}

/// `theta_arm + N(0, sigma0^2)`.
pub fn sample_reward_mab<R: Rng + ?Sized>(instance: &BanditInstance, arm: usize, rng: &mut R) -> Result<f64> {
    let arms = instance.arms();
    if arm >= arms {
        return Err(Error::ArmOutOfRange { arm, arms });
    }
    Ok(instance.means()[arm] + gaussian_noise(instance.noise_scale(), rng))
}

/// `theta . action + N(0, sigma0^2)`.
pub fn sample_reward_linear<R: Rng + ?Sized>(
    instance: &LinearInstance,
    action: &[f64],
    rng: &mut R,
) -> Result<f64> {
    if action.len() != instance.dim() {
        return Err(Error::LengthMismatch {
            expected: instance.dim(),
            found: action.len(),
        });
    }
    check_action_norm(action)?;
    Ok(dot(instance.theta(), action) + gaussian_noise(instance.noise_scale(), rng))
}

/// `count` i.i.d. uniform points on the unit sphere in `dim` dimensions.
pub fn make_action_set<R: Rng + ?Sized>(dim: usize, count: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..count).map(|_| unit_vector(dim, rng)).collect()
}

fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // a zero draw has probability zero but would divide by zero
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
