use nalgebra::{DMatrix, DVector};

use super::ActionPolicy;
use crate::bonus::{BonusSchedule, Design};
use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// Full re-inversion cadence for the Gram-matrix inverse.
pub const DEFAULT_REINVERT_EVERY: usize = 256;

/// Linear UCB over finite action lists.
///
/// Keeps `V = I + sum a a'`, its inverse (rank-one Sherman-Morrison updates,
/// refreshed by a Cholesky re-inversion every `reinvert_every` steps),
/// `b = sum a r` and `theta_hat = V^{-1} b`. Each round scores every offered
/// action by `theta_hat . a + rad_t(a' V^{-1} a)` and takes the first
/// maximiser.
#[derive(Debug, Clone)]
pub struct LinUcb {
    bonus: BonusSchedule,
    gram: DMatrix<f64>,
    gram_inv: DMatrix<f64>,
    b: DVector<f64>,
    theta_hat: DVector<f64>,
    reinvert_every: usize,
    since_reinvert: usize,
    potential: f64,
    scratch: DVector<f64>,
}

impl LinUcb {
    pub fn new(bonus: BonusSchedule, reinvert_every: usize) -> Result<Self> {
        if bonus.design() != Design::Linear {
            return Err(Error::InvalidPolicy(format!(
                "LinUCB needs the linear bonus, not {}",
                bonus.design().name()
            )));
        }
        if reinvert_every == 0 {
            return Err(Error::InvalidPolicy("reinvert_every must be positive".into()));
        }
        let d = bonus.dim();
        Ok(Self {
            bonus,
            gram: DMatrix::identity(d, d),
            gram_inv: DMatrix::identity(d, d),
            b: DVector::zeros(d),
            theta_hat: DVector::zeros(d),
            reinvert_every,
            since_reinvert: 0,
            potential: 0.0,
            scratch: DVector::zeros(d),
        })
    }

    pub fn dim(&self) -> usize {
        self.theta_hat.len()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &DMatrix<f64> {
        &self.gram_inv
    }

    pub fn theta_hat(&self) -> &DVector<f64> {
        &self.theta_hat
    }

    /// Overrides the estimator state; used to probe the selection rule.
    pub fn set_state(&mut self, theta_hat: DVector<f64>, gram_inv: DMatrix<f64>) {
        self.theta_hat = theta_hat;
        self.gram_inv = gram_inv;
    }

    /// `a' V^{-1} a`, clamped at zero against round-off.
    pub fn quadratic(&self, a: &[f64]) -> f64 {
        let d = self.dim();
        let mut z = 0.0;
        for j in 0..d {
            let col = self.gram_inv.column(j);
            let mut s = 0.0;
            for i in 0..d {
                s += a[i] * col[i];
            }
            z += s * a[j];
        }
        z.max(0.0)
    }

    pub fn score(&self, a: &[f64], t: u64) -> Result<f64> {
        if a.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        let mean: f64 = self.theta_hat.iter().zip(a).map(|(x, y)| x * y).sum();
        Ok(mean + self.bonus.linear_radius(self.quadratic(a), t)?)
    }

    fn reinvert(&mut self) {
        if let Some(chol) = self.gram.clone().cholesky() {
            self.gram_inv = chol.inverse();
        }
        self.since_reinvert = 0;
    }
}

impl ActionPolicy for LinUcb {
    fn select(&mut self, actions: &[Vec<f64>], t: u64, _rng: &mut StreamRng) -> Result<usize> {
        if actions.is_empty() {
            return Err(Error::EmptyActionSet);
        }
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for (i, a) in actions.iter().enumerate() {
            let s = self.score(a, t)?;
            if s > best_score {
                best_score = s;
                best = i;
            }
        }
        Ok(best)
    }

    fn update(&mut self, action: &[f64], reward: f64) {
        let d = self.dim();
        let a = DVector::from_column_slice(action);
        self.gram_inv.mul_to(&a, &mut self.scratch);
        let z = a.dot(&self.scratch);
        self.potential += z;
        self.gram.ger(1.0, &a, &a, 1.0);
        self.gram_inv
            .ger(-1.0 / (1.0 + z), &self.scratch, &self.scratch, 1.0);
        self.b.axpy(reward, &a, 1.0);
        self.since_reinvert += 1;
        if self.since_reinvert >= self.reinvert_every {
            self.reinvert();
        }
        debug_assert_eq!(self.theta_hat.len(), d);
        self.gram_inv.mul_to(&self.b, &mut self.theta_hat);
    }

    fn elliptical_potential(&self) -> Option<f64> {
        Some(self.potential)
    }
}
