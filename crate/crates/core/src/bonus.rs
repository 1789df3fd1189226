//! Confidence-radius schedules.
//!
//! | design     | radius                                               |
//! |------------|------------------------------------------------------|
//! | `Standard` | `sigma * sqrt(eta ln T / n)`                         |
//! | `NewSqrtT` | `sigma * sqrt(eta T ln T) / n`                       |
//! | `OptimalK` | `sigma * sqrt(ln T / n) * max(sqrt(eta1 T / (n K)), sqrt(eta2))` |
//! | `AnyTime`  | `sigma * sqrt(eta t (1 v ln(K t))) / (n sqrt(K))`    |
//! | `Linear`   | `z sigma sqrt(eta t / d) + sqrt(d z)`                |
//!
//! Pull-count schedules return `+inf` at `n = 0`, which forces every arm to
//! be tried once before any comparison. `ln` is the natural logarithm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Design {
    #[serde(alias = "standard")]
    Standard,
    #[serde(alias = "new", alias = "new_sqrt_t")]
    NewSqrtT,
    #[serde(alias = "optimal", alias = "optimal_k")]
    OptimalK,
    #[serde(alias = "anytime", alias = "any_time")]
    AnyTime,
    #[serde(alias = "linear")]
    Linear,
}

impl Design {
    pub fn name(self) -> &'static str {
        match self {
            Design::Standard => "standard",
            Design::NewSqrtT => "new",
            Design::OptimalK => "optimal",
            Design::AnyTime => "anytime",
            Design::Linear => "linear",
        }
    }

    /// Whether the radius is a function of a pull count (K-armed designs).
    pub fn is_pull_count(self) -> bool {
        !matches!(self, Design::Linear)
    }
}

pub fn rad_standard(n: u64, horizon: u64, sigma: f64, eta: f64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    sigma * (eta * (horizon as f64).ln() / n as f64).sqrt()
}

pub fn rad_new(n: u64, horizon: u64, sigma: f64, eta: f64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let t = horizon as f64;
    sigma * (eta * t * t.ln()).sqrt() / n as f64
}

pub fn rad_optimal(n: u64, horizon: u64, arms: usize, sigma: f64, eta1: f64, eta2: f64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let t = horizon as f64;
    let n = n as f64;
    let widen = (eta1 * t / (n * arms as f64)).sqrt().max(eta2.sqrt());
    sigma * (t.ln() / n).sqrt() * widen
}

pub fn rad_anytime(n: u64, t: u64, arms: usize, sigma: f64, eta: f64) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let t = t as f64;
    let k = arms as f64;
    let log_term = (k * t).ln().max(1.0);
    sigma * (eta * t * log_term).sqrt() / (n as f64 * k.sqrt())
}

/// Linear-bandit radius as a function of `z = a' V^{-1} a`.
pub fn rad_linear(z: f64, t: u64, dim: usize, sigma: f64, eta: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::NegativeQuadratic(z));
    }
    let d = dim as f64;
    Ok(z * sigma * (eta * t as f64 / d).sqrt() + (d * z).sqrt())
}

/// A validated radius schedule with its context (`T`, `K`, `d`) bound in.
#[derive(Debug, Clone, PartialEq)]
pub struct BonusSchedule {
    design: Design,
    sigma: f64,
    eta: f64,
    eta2: f64,
    horizon: u64,
    arms: usize,
    dim: usize,
    // Horizon-dependent factors, hoisted out of the per-step evaluation.
    lead: f64,
    tail: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidBonus(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn check_horizon(horizon: u64) -> Result<()> {
    if horizon < 3 {
        return Err(Error::InvalidBonus(format!("horizon must be at least 3, got {horizon}")));
    }
    Ok(())
}

impl BonusSchedule {
    pub fn standard(sigma: f64, eta: f64, horizon: u64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("eta", eta)?;
        check_horizon(horizon)?;
        let lead = sigma * (eta * (horizon as f64).ln()).sqrt();
        Ok(Self::raw(Design::Standard, sigma, eta, 0.0, horizon, 0, 0, lead, 0.0))
    }

    pub fn new_sqrt_t(sigma: f64, eta: f64, horizon: u64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("eta", eta)?;
        check_horizon(horizon)?;
        let t = horizon as f64;
        let lead = sigma * (eta * t * t.ln()).sqrt();
        Ok(Self::raw(Design::NewSqrtT, sigma, eta, 0.0, horizon, 0, 0, lead, 0.0))
    }

    pub fn optimal(sigma: f64, eta1: f64, eta2: f64, horizon: u64, arms: usize) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("eta1", eta1)?;
        if !(eta2.is_finite() && eta2 >= 0.0) {
            return Err(Error::InvalidBonus(format!("eta2 must be non-negative, got {eta2}")));
        }
        check_horizon(horizon)?;
        if arms == 0 {
            return Err(Error::InvalidBonus("arm count must be positive".into()));
        }
        let t = horizon as f64;
        let lead = sigma * (t.ln() * eta1 * t / arms as f64).sqrt();
        let tail = sigma * (eta2 * t.ln()).sqrt();
        Ok(Self::raw(Design::OptimalK, sigma, eta1, eta2, horizon, arms, 0, lead, tail))
    }

    /// Any-time schedule; `horizon` is recorded for reporting only.
    pub fn any_time(sigma: f64, eta: f64, arms: usize) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("eta", eta)?;
        if arms == 0 {
            return Err(Error::InvalidBonus("arm count must be positive".into()));
        }
        Ok(Self::raw(Design::AnyTime, sigma, eta, 0.0, 0, arms, 0, 0.0, 0.0))
    }

    pub fn linear(sigma: f64, eta: f64, dim: usize) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidBonus(format!("sigma must be non-negative, got {sigma}")));
        }
        check_positive("eta", eta)?;
        if dim == 0 {
            return Err(Error::InvalidBonus("dimension must be positive".into()));
        }
        Ok(Self::raw(Design::Linear, sigma, eta, 0.0, 0, 0, dim, 0.0, 0.0))
    }

    /// Builds `design` from the single knob `kappa = sigma * sqrt(eta)`,
    /// with `sigma = 1` and `eta = kappa^2` (for `OptimalK`, `eta1 = eta2`).
    pub fn from_kappa(design: Design, kappa: f64, horizon: u64, arms: usize, dim: usize) -> Result<Self> {
        check_positive("kappa", kappa)?;
        let eta = kappa * kappa;
        match design {
            Design::Standard => Self::standard(1.0, eta, horizon),
            Design::NewSqrtT => Self::new_sqrt_t(1.0, eta, horizon),
            Design::OptimalK => Self::optimal(1.0, eta, eta, horizon, arms),
            Design::AnyTime => Self::any_time(1.0, eta, arms),
            Design::Linear => Self::linear(1.0, eta, dim),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn raw(
        design: Design,
        sigma: f64,
        eta: f64,
        eta2: f64,
        horizon: u64,
        arms: usize,
        dim: usize,
        lead: f64,
        tail: f64,
    ) -> Self {
        Self {
            design,
            sigma,
            eta,
            eta2,
            horizon,
            arms,
            dim,
            lead,
            tail,
        }
    }

    pub fn design(&self) -> Design {
        self.design
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `eta`, or `eta1` for the `OptimalK` design.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    pub fn kappa(&self) -> f64 {
        self.sigma * self.eta.sqrt()
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn arms(&self) -> usize {
        self.arms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Radius after `n` pulls at round `t` (`t` only matters for `AnyTime`).
    ///
    /// # Panics
    ///
    /// On a `Linear` schedule, whose radius takes a quadratic form instead.
    #[inline]
    pub fn radius(&self, n: u64, t: u64) -> f64 {
        if n == 0 {
            return f64::INFINITY;
        }
        let nf = n as f64;
        match self.design {
            Design::Standard => self.lead / nf.sqrt(),
            Design::NewSqrtT => self.lead / nf,
            Design::OptimalK => (self.lead / nf).max(self.tail / nf.sqrt()),
            Design::AnyTime => rad_anytime(n, t, self.arms, self.sigma, self.eta),
            Design::Linear => panic!("linear schedule evaluated on a pull count"),
        }
    }

    /// Linear radius for `z = a' V^{-1} a` at round `t`.
    pub fn linear_radius(&self, z: f64, t: u64) -> Result<f64> {
        rad_linear(z, t, self.dim.max(1), self.sigma, self.eta)
    }
}

/// Config-level description of a schedule, resolved against an instance by
/// [`BonusSpec::build`]. Either `kappa`, `(sigma, eta)` or, for `OptimalK`,
/// `(sigma, eta1, eta2)` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BonusSpec {
    pub design: Design,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta2: Option<f64>,
}

impl BonusSpec {
    pub fn kappa(design: Design, kappa: f64) -> Self {
        Self {
            design,
            sigma: None,
            eta: None,
            kappa: Some(kappa),
            eta1: None,
            eta2: None,
        }
    }

    pub fn sigma_eta(design: Design, sigma: f64, eta: f64) -> Self {
        Self {
            design,
            sigma: Some(sigma),
            eta: Some(eta),
            kappa: None,
            eta1: None,
            eta2: None,
        }
    }

    pub fn optimal(sigma: f64, eta1: f64, eta2: f64) -> Self {
        Self {
            design: Design::OptimalK,
            sigma: Some(sigma),
            eta: None,
            kappa: None,
            eta1: Some(eta1),
            eta2: Some(eta2),
        }
    }

    /// The value reported as "kappa_or_eta": kappa when given, else eta (or eta1).
    pub fn knob(&self) -> f64 {
        self.kappa
            .or(self.eta)
            .or(self.eta1)
            .unwrap_or(f64::NAN)
    }

    pub fn build(&self, horizon: u64, arms: usize, dim: usize) -> Result<BonusSchedule> {
        if let Some(kappa) = self.kappa {
            if self.sigma.is_some() || self.eta.is_some() || self.eta1.is_some() || self.eta2.is_some() {
                return Err(Error::InvalidBonus(
                    "kappa cannot be combined with sigma/eta/eta1/eta2".into(),
                ));
            }
            return BonusSchedule::from_kappa(self.design, kappa, horizon, arms, dim);
        }
        let sigma = self
            .sigma
            .ok_or_else(|| Error::InvalidBonus("missing field `sigma` (or `kappa`)".into()))?;
        if self.design == Design::OptimalK {
            let (eta1, eta2) = match (self.eta1, self.eta2, self.eta) {
                (Some(a), Some(b), None) => (a, b),
                (None, None, Some(e)) => (e, e),
                _ => {
                    return Err(Error::InvalidBonus(
                        "optimal design needs `eta1` and `eta2` (or a single `eta`)".into(),
                    ))
                }
            };
            return BonusSchedule::optimal(sigma, eta1, eta2, horizon, arms);
        }
        if self.eta1.is_some() || self.eta2.is_some() {
            return Err(Error::InvalidBonus(format!(
                "`eta1`/`eta2` only apply to the optimal design, not {}",
                self.design.name()
            )));
        }
        let eta = self
            .eta
            .ok_or_else(|| Error::InvalidBonus("missing field `eta` (or `kappa`)".into()))?;
        match self.design {
            Design::Standard => BonusSchedule::standard(sigma, eta, horizon),
            Design::NewSqrtT => BonusSchedule::new_sqrt_t(sigma, eta, horizon),
            Design::AnyTime => BonusSchedule::any_time(sigma, eta, arms),
            Design::Linear => BonusSchedule::linear(sigma, eta, dim),
            Design::OptimalK => unreachable!(),
        }
    }
}
