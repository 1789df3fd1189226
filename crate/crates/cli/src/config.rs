//! Strict JSON experiment configs.
//!
//! ```json
//! {
//!   "instance": {"means": [0.2, 0.8], "sigma0": 1.0, "T": 500},
//!   "policy": {"kind": "UCB", "bonus": {"design": "new", "kappa": 0.2}},
//!   "replications": 5000,
//!   "master_seed": 20240,
//!   "thresholds": [50, 100, 150]
//! }
//! ```
//!
//! Linear instances use `{"theta": [..], "d": 4, "K_actions": 16, "sigma0": 1,
//! "T": 1000, "action_set": "fixed" | "per_round"}`, optionally with explicit
//! `"actions"` for a fixed set. Unknown keys are rejected everywhere.

use std::path::Path;

use serde::Deserialize;
use tailrisk_core::analysis::{TailBound, TailFunctional};
use tailrisk_core::model::ActionSets;
use tailrisk_core::{BanditInstance, Environment, LinearInstance, PolicySpec, RunConfig, DEFAULT_MASTER_SEED};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSetKind {
    #[default]
    Fixed,
    PerRound,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(default)]
    pub means: Option<Vec<f64>>,
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default, rename = "K_actions")]
    pub k_actions: Option<usize>,
    #[serde(default)]
    pub action_set: Option<ActionSetKind>,
    #[serde(default)]
    pub actions: Option<Vec<Vec<f64>>>,
    pub sigma0: f64,
    #[serde(rename = "T")]
    pub horizon: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: InstanceConfig,
    pub policy: PolicySpec,
    #[serde(default)]
    pub replications: Option<u64>,
    #[serde(default)]
    pub master_seed: Option<u64>,
    #[serde(default)]
    pub record_trace: bool,
    #[serde(default)]
    pub thresholds: Option<Vec<f64>>,
    #[serde(default)]
    pub tail_functional: TailFunctional,
    /// Closed-form bound reported next to the empirical tail.
    #[serde(default)]
    pub bound: Option<TailBound>,
}

fn missing(path: &str, field: &str) -> CliError {
    CliError::Config {
        path: path.into(),
        message: format!("missing field `{field}`"),
    }
}

fn invalid(path: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Config {
        path: path.into(),
        message: err.to_string(),
    }
}

pub fn parse(text: &str) -> CliResult<ExperimentConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        // serde_json already appends "at line L column C".
        CliError::Config {
            path: e.path().to_string(),
            message: e.into_inner().to_string(),
        }
    })
}

pub fn load(path: &Path) -> CliResult<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse(&text)
}

impl InstanceConfig {
    pub fn environment(&self) -> CliResult<Environment> {
        match (&self.means, &self.theta) {
            (Some(_), Some(_)) => Err(invalid("instance", "give either `means` or `theta`, not both")),
            (None, None) => Err(missing("instance.means", "means")),
            (Some(means), None) => {
                for key in [
                    ("d", self.d.is_some()),
                    ("K_actions", self.k_actions.is_some()),
                    ("action_set", self.action_set.is_some()),
                    ("actions", self.actions.is_some()),
                ] {
                    if key.1 {
                        return Err(invalid(
                            &format!("instance.{}", key.0),
                            "only applies to linear instances",
                        ));
                    }
                }
                BanditInstance::new(means.clone(), self.sigma0, self.horizon)
                    .map(Environment::Mab)
                    .map_err(|e| invalid("instance", e))
            }
            (None, Some(theta)) => {
                if let Some(d) = self.d {
                    if d != theta.len() {
                        return Err(invalid(
                            "instance.d",
                            format!("d = {d} but theta has {} entries", theta.len()),
                        ));
                    }
                }
                let kind = self.action_set.unwrap_or_default();
                let actions = match (&self.actions, kind, self.k_actions) {
                    (Some(set), ActionSetKind::Fixed, k) => {
                        if k.is_some_and(|k| k != set.len()) {
                            return Err(invalid("instance.K_actions", "does not match the number of actions"));
                        }
                        ActionSets::Fixed(set.clone())
                    }
                    (Some(_), ActionSetKind::PerRound, _) => {
                        return Err(invalid("instance.actions", "explicit actions need action_set = fixed"))
                    }
                    (None, _, None) => return Err(missing("instance.K_actions", "K_actions")),
                    (None, ActionSetKind::Fixed, Some(count)) => ActionSets::RandomFixed { count },
                    (None, ActionSetKind::PerRound, Some(count)) => ActionSets::RandomPerRound { count },
                };
                LinearInstance::new(theta.clone(), actions, self.sigma0, self.horizon)
                    .map(Environment::Linear)
                    .map_err(|e| invalid("instance", e))
            }
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replications: Option<u64>,
}

impl ExperimentConfig {
    pub fn run_config(&self, overrides: Overrides) -> CliResult<RunConfig> {
        let replications = overrides
            .replications
            .or(self.replications)
            .ok_or_else(|| missing("replications", "replications"))?;
        let config = RunConfig {
            environment: self.instance.environment()?,
            policy: self.policy.clone(),
            replications,
            master_seed: overrides.seed.or(self.master_seed).unwrap_or(DEFAULT_MASTER_SEED),
            record_trace: self.record_trace,
        };
        config.validate()?;
        if let Some(bound) = &self.bound {
            bound.validate().map_err(|e| invalid("bound", e))?;
        }
        Ok(config)
    }
}
