//! Closed-form, non-asymptotic tail bounds on `P(regret >= x)`.
//!
//! Each evaluator returns the raw (possibly vacuous, > 1) value. Terms whose
//! prefactor can overflow (`K^2 T`, `2 K T^3`, `2 d (T/d)^(2d+1)`) are
//! combined with their exponential in log space whenever the direct product
//! would overflow or underflow. Thresholds below zero are treated as zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundName {
    ThmK,
    ThmKOpt,
    ThmAnyTime,
    ThmLinear,
    NeatForm,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::ThmK => "ThmK",
            BoundName::ThmKOpt => "ThmKOpt",
            BoundName::ThmAnyTime => "ThmAnyTime",
            BoundName::ThmLinear => "ThmLinear",
            BoundName::NeatForm => "NeatForm",
        }
    }
}

/// Which K-armed bound a neat-form evaluation simplifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NeatVariant {
    ThmK,
    ThmKOpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub raw: f64,
    /// Change-of-variable `y`, for neat-form bounds.
    pub y: Option<f64>,
}

impl BoundValue {
    pub fn clamped(&self) -> f64 {
        self.raw.min(1.0)
    }
}

#[inline]
fn pos(v: f64) -> f64 {
    v.max(0.0)
}

/// `coef * exp(-exponent)`, falling back to `exp(ln_coef - exponent)` when
/// the direct product is not representable.
fn weighted(coef: f64, ln_coef: f64, exponent: f64) -> f64 {
    if exponent == 0.0 && coef.is_finite() {
        return coef;
    }
    let direct = coef * (-exponent).exp();
    if coef.is_finite() && direct.is_normal() {
        direct
    } else {
        (ln_coef - exponent).exp()
    }
}

/// Direct-extension K-armed bound (new radius, any `eta > 0`).
///
/// `exp(-x^2/(2 K s^2 T)) + 2K exp(-(x - 2K - 4 K s sqrt(eta T lnT))_+^2 / (32 s^2 K^2 T))
///  + K^2 T exp(-x sqrt(eta lnT) / (8 s K sqrt T))`
pub fn bound_k_armed(x: f64, arms: usize, horizon: u64, sigma: f64, eta: f64) -> f64 {
    let x = pos(x);
    let k = arms as f64;
    let t = horizon as f64;
    let s2 = sigma * sigma;
    let ln_t = t.ln();
    let first = (-(x * x) / (2.0 * k * s2 * t)).exp();
    let shift = 2.0 * k + 4.0 * k * sigma * (eta * t * ln_t).sqrt();
    let gap = pos(x - shift);
    let second = weighted(2.0 * k, (2.0 * k).ln(), gap * gap / (32.0 * s2 * k * k * t));
    let third = weighted(
        k * k * t,
        2.0 * k.ln() + ln_t,
        x * (eta * ln_t).sqrt() / (8.0 * sigma * k * t.sqrt()),
    );
    first + second + third
}

/// K-armed bound for the optimal-in-K radius (`eta1 > 0`, `eta2 >= 0`).
pub fn bound_k_armed_optimal(x: f64, arms: usize, horizon: u64, sigma: f64, eta1: f64, eta2: f64) -> f64 {
    let x = pos(x);
    let k = arms as f64;
    let t = horizon as f64;
    let s2 = sigma * sigma;
    let ln_t = t.ln();
    let first = (-(x * x) / (8.0 * k * s2 * t)).exp();
    let shift = 2.0 * k + 8.0 * sigma * (eta1.max(eta2) * k * t * ln_t).sqrt();
    let gap = pos(x - shift);
    let second = weighted(4.0 * k, (4.0 * k).ln(), gap * gap / (128.0 * s2 * k * t));
    let third = weighted(
        2.0 * k * k * t,
        2.0_f64.ln() + 2.0 * k.ln() + ln_t,
        pos(x - 2.0 * k) * (eta1 * ln_t).sqrt() / (16.0 * sigma * (k * t).sqrt()),
    );
    first + second + third
}

/// Bound for UCB with the any-time radius.
pub fn bound_anytime(x: f64, arms: usize, horizon: u64, sigma: f64, eta: f64) -> f64 {
    let x = pos(x);
    let k = arms as f64;
    let t = horizon as f64;
    let s2 = sigma * sigma;
    let ln_t = t.ln();
    let first = (-(x * x) / (8.0 * k * s2 * t)).exp();
    let shift = 2.0 * k + 16.0 * sigma * (2.0 * eta * k * t * ln_t).sqrt();
    let gap = pos(x - shift);
    let second = weighted(
        2.0 * k * t * t,
        (2.0 * k).ln() + 2.0 * ln_t,
        gap * gap / (512.0 * s2 * k * t),
    );
    let third = weighted(
        2.0 * k * t * t * t,
        (2.0 * k).ln() + 3.0 * ln_t,
        pos(x - 2.0 * k) * (eta * ln_t).sqrt() / (16.0 * sigma * (k * t).sqrt()),
    );
    first + second + third
}

/// Bound for linear UCB with the linear radius. Requires `T >= d >= 1`.
pub fn bound_linear(x: f64, dim: usize, horizon: u64, sigma: f64, eta: f64) -> Result<f64> {
    if dim == 0 || horizon < dim as u64 {
        return Err(Error::InvalidArgument(format!(
            "linear bound needs T >= d >= 1, got T = {horizon}, d = {dim}"
        )));
    }
    let x = pos(x);
    let d = dim as f64;
    let t = horizon as f64;
    let s2 = sigma * sigma;
    let ln_t = t.ln();
    let first = (-(x * x) / (2.0 * s2 * d * d * t)).exp();
    let ln_coef = (2.0 * d).ln() + (2.0 * d + 1.0) * (t / d).ln();
    let coef = 2.0 * d * (t / d).powf(2.0 * d + 1.0);
    let shift = 4.0 * d.sqrt() + 32.0 * d * t.sqrt() * ln_t + 16.0 * sigma * (eta * d * t).sqrt() * ln_t;
    let gap = pos(x - shift);
    let second = weighted(coef, ln_coef, gap * gap / (512.0 * s2 * d * t * ln_t * ln_t));
    let third = weighted(
        coef,
        ln_coef,
        pos(x - 4.0 * d.sqrt()) * eta.sqrt() / (8.0 * sigma * (d * t).sqrt() * ln_t),
    );
    Ok(first + second + third)
}

/// Single-exponential simplification of the K-armed bounds.
///
/// `ThmK`:    `y = (x - 2K - 16 s K sqrt((eta v 1/eta) T lnT))_+ / (8 s K sqrt T)`,
///            bound `4K exp(-min(y^2, y sqrt(eta lnT)))`.
/// `ThmKOpt`: `y = (x - 2K - 32 s sqrt((eta v 1/eta) K T lnT))_+ / (16 s sqrt(K T))`,
///            bound `8K exp(-min(y^2, y sqrt(eta lnT)))`.
pub fn neat_form_bound(
    x: f64,
    arms: usize,
    horizon: u64,
    sigma: f64,
    eta: f64,
    variant: NeatVariant,
) -> BoundValue {
    let x = pos(x);
    let k = arms as f64;
    let t = horizon as f64;
    let ln_t = t.ln();
    let spread = eta.max(1.0 / eta);
    let (y, lead) = match variant {
        NeatVariant::ThmK => (
            pos(x - 2.0 * k - 16.0 * sigma * k * (spread * t * ln_t).sqrt()) / (8.0 * sigma * k * t.sqrt()),
            4.0 * k,
        ),
        NeatVariant::ThmKOpt => (
            pos(x - 2.0 * k - 32.0 * sigma * (spread * k * t * ln_t).sqrt()) / (16.0 * sigma * (k * t).sqrt()),
            8.0 * k,
        ),
    };
    let exponent = (y * y).min(y * (eta * ln_t).sqrt());
    BoundValue {
        raw: weighted(lead, lead.ln(), exponent),
        y: Some(y),
    }
}

/// A bound together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "bound")]
pub enum TailBound {
    ThmK {
        arms: usize,
        horizon: u64,
        sigma: f64,
        eta: f64,
    },
    ThmKOpt {
        arms: usize,
        horizon: u64,
        sigma: f64,
        eta1: f64,
        eta2: f64,
    },
    ThmAnyTime {
        arms: usize,
        horizon: u64,
        sigma: f64,
        eta: f64,
    },
    ThmLinear {
        dim: usize,
        horizon: u64,
        sigma: f64,
        eta: f64,
    },
    NeatForm {
        variant: NeatVariant,
        arms: usize,
        horizon: u64,
        sigma: f64,
        eta: f64,
    },
}

impl TailBound {
    pub fn name(&self) -> BoundName {
        match self {
            TailBound::ThmK { .. } => BoundName::ThmK,
            TailBound::ThmKOpt { .. } => BoundName::ThmKOpt,
            TailBound::ThmAnyTime { .. } => BoundName::ThmAnyTime,
            TailBound::ThmLinear { .. } => BoundName::ThmLinear,
            TailBound::NeatForm { .. } => BoundName::NeatForm,
        }
    }

    /// Checks the parameter preconditions once, so [`TailBound::evaluate`]
    /// can stay infallible.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
            }
        };
        let horizon_ok = |horizon: u64| {
            if horizon >= 3 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("T must be at least 3, got {horizon}")))
            }
        };
        let arms_ok = |arms: usize| {
            if arms >= 1 {
                Ok(())
            } else {
                Err(Error::InvalidArgument("K must be at least 1".into()))
            }
        };
        match *self {
            TailBound::ThmK { arms, horizon, sigma, eta }
            | TailBound::ThmAnyTime { arms, horizon, sigma, eta }
            | TailBound::NeatForm { arms, horizon, sigma, eta, .. } => {
                arms_ok(arms)?;
                horizon_ok(horizon)?;
                positive("sigma", sigma)?;
                positive("eta", eta)
            }
            TailBound::ThmKOpt { arms, horizon, sigma, eta1, eta2 } => {
                arms_ok(arms)?;
                horizon_ok(horizon)?;
                positive("sigma", sigma)?;
                positive("eta1", eta1)?;
                if eta2.is_finite() && eta2 >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!("eta2 must be non-negative, got {eta2}")))
                }
            }
            TailBound::ThmLinear { dim, horizon, sigma, eta } => {
                if dim == 0 || horizon < dim as u64 || horizon < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "linear bound needs T >= d >= 1 and T >= 2, got T = {horizon}, d = {dim}"
                    )));
                }
                positive("sigma", sigma)?;
                positive("eta", eta)
            }
        }
    }

    pub fn evaluate(&self, x: f64) -> BoundValue {
        let plain = |raw| BoundValue { raw, y: None };
        match *self {
            TailBound::ThmK { arms, horizon, sigma, eta } => plain(bound_k_armed(x, arms, horizon, sigma, eta)),
            TailBound::ThmKOpt { arms, horizon, sigma, eta1, eta2 } => {
                plain(bound_k_armed_optimal(x, arms, horizon, sigma, eta1, eta2))
            }
            TailBound::ThmAnyTime { arms, horizon, sigma, eta } => plain(bound_anytime(x, arms, horizon, sigma, eta)),
            TailBound::ThmLinear { dim, horizon, sigma, eta } => {
                plain(bound_linear(x, dim, horizon, sigma, eta).unwrap_or(f64::NAN))
            }
            TailBound::NeatForm { variant, arms, horizon, sigma, eta } => {
                neat_form_bound(x, arms, horizon, sigma, eta, variant)
            }
        }
    }
}
