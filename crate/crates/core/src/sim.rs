//! Episode runner and the deterministic Monte Carlo driver.
//!
//! Every path is a pure function of `(environment, policy, master_seed,
//! path index)`. Batches are computed in parallel and handed to the sink in
//! path order, so output never depends on the worker count.

use std::borrow::Cow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::env::{dot, gaussian_noise, make_action_set};
use crate::error::{Error, Result};
use crate::model::{pseudo_regret, ActionSets, BanditInstance, EpisodeResult, LinearInstance};
use crate::policy::{ActionPolicy, ArmPolicy, PolicySpec};
use crate::rng::PathSeed;

/// Paths handed to the pool per worker in one batch.
const PATHS_PER_WORKER: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Environment {
    Mab(BanditInstance),
    Linear(LinearInstance),
}

impl Environment {
    pub fn horizon(&self) -> u64 {
        match self {
            Environment::Mab(i) => i.horizon(),
            Environment::Linear(i) => i.horizon(),
        }
    }

    pub fn noise_scale(&self) -> f64 {
        match self {
            Environment::Mab(i) => i.noise_scale(),
            Environment::Linear(i) => i.noise_scale(),
        }
    }

    /// Arms for K-armed instances, actions per round for linear ones.
    pub fn arms(&self) -> usize {
        match self {
            Environment::Mab(i) => i.arms(),
            Environment::Linear(i) => i.actions_per_round(),
        }
    }

    /// Same environment over a different horizon.
    pub fn with_horizon(&self, horizon: u64) -> Result<Self> {
        Ok(match self {
            Environment::Mab(i) => Environment::Mab(i.with_horizon(horizon)?),
            Environment::Linear(i) => Environment::Linear(i.with_horizon(horizon)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub environment: Environment,
    pub policy: PolicySpec,
    pub replications: u64,
    pub master_seed: u64,
    pub record_trace: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidArgument("replications must be at least 1".into()));
        }
        match &self.environment {
            Environment::Mab(inst) => self.policy.build_mab(inst).map(drop),
            Environment::Linear(inst) => self.policy.build_linear(inst).map(drop),
        }
    }

    pub fn path_seed(&self, path: u64) -> PathSeed {
        PathSeed::new(self.master_seed, path)
    }
}

/// Runs one episode of `environment` under `policy`.
pub fn run_episode(
    environment: &Environment,
    policy: &PolicySpec,
    seed: PathSeed,
    record_trace: bool,
) -> Result<EpisodeResult> {
    match environment {
        Environment::Mab(inst) => {
            let mut p = policy.build_mab(inst)?;
            Ok(run_mab(inst, p.as_mut(), seed, record_trace))
        }
        Environment::Linear(inst) => {
            let mut p = policy.build_linear(inst)?;
            run_linear(inst, p.as_mut(), seed, record_trace)
        }
    }
}

fn run_mab(inst: &BanditInstance, policy: &mut dyn ArmPolicy, seed: PathSeed, record_trace: bool) -> EpisodeResult {
    let horizon = inst.horizon();
    let means = inst.means();
    let scale = inst.noise_scale();
    let mut env_rng = seed.environment();
    let mut policy_rng = seed.policy();
    let mut pulls = vec![0u64; inst.arms()];
    let mut noise_sum = 0.0;
    let mut cumulative_reward = 0.0;
    let mut trace = record_trace.then(|| Vec::with_capacity(horizon as usize));

    for t in 1..=horizon {
        let arm = policy.select(t, &mut policy_rng);
        let noise = gaussian_noise(scale, &mut env_rng);
        let reward = means[arm] + noise;
        pulls[arm] += 1;
        noise_sum += noise;
        cumulative_reward += reward;
        if let Some(tr) = trace.as_mut() {
            tr.push(arm as u32);
        }
        policy.update(arm, reward, t);
    }

    let pseudo = pseudo_regret(&pulls, means).expect("pull vector sized from the instance");
    EpisodeResult {
        pulls,
        pseudo_regret: pseudo,
        noise_sum,
        empirical_regret: pseudo - noise_sum,
        cumulative_reward,
        optimal_reward: inst.optimal_reward(),
        arm_sequence: trace,
        elliptical_potential: None,
    }
}

fn run_linear(
    inst: &LinearInstance,
    policy: &mut dyn ActionPolicy,
    seed: PathSeed,
    record_trace: bool,
) -> Result<EpisodeResult> {
    let horizon = inst.horizon();
    let theta = inst.theta();
    let dim = inst.dim();
    let scale = inst.noise_scale();
    let mut env_rng = seed.environment();
    let mut policy_rng = seed.policy();

    let fixed: Option<Cow<'_, [Vec<f64>]>> = match inst.actions() {
        ActionSets::Fixed(set) => Some(Cow::Borrowed(set.as_slice())),
        ActionSets::RandomFixed { count } => Some(Cow::Owned(make_action_set(dim, *count, &mut env_rng))),
        _ => None,
    };
    let mut pulls = vec![0u64; inst.actions_per_round()];
    let mut fresh: Vec<Vec<f64>>;
    let mut values = Vec::with_capacity(pulls.len());
    let mut pseudo = 0.0;
    let mut noise_sum = 0.0;
    let mut cumulative_reward = 0.0;
    let mut optimal_reward = 0.0;
    let mut trace = record_trace.then(|| Vec::with_capacity(horizon as usize));

    for t in 1..=horizon {
        let set: &[Vec<f64>] = match (inst.actions(), &fixed) {
            (_, Some(set)) => set,
            (ActionSets::PerRound(sets), None) => &sets[(t - 1) as usize],
            (ActionSets::RandomPerRound { count }, None) => {
                fresh = make_action_set(dim, *count, &mut env_rng);
                &fresh
            }
            _ => unreachable!("fixed action sets are resolved before the loop"),
        };
        values.clear();
        values.extend(set.iter().map(|a| dot(theta, a)));
        let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

        let idx = policy.select(set, t, &mut policy_rng)?;
        let noise = gaussian_noise(scale, &mut env_rng);
        let reward = values[idx] + noise;
        pulls[idx] += 1;
        pseudo += best - values[idx];
        optimal_reward += best;
        noise_sum += noise;
        cumulative_reward += reward;
        if let Some(tr) = trace.as_mut() {
            tr.push(idx as u32);
        }
        policy.update(&set[idx], reward);
    }

    Ok(EpisodeResult {
        pulls,
        pseudo_regret: pseudo,
        noise_sum,
        empirical_regret: pseudo - noise_sum,
        cumulative_reward,
        optimal_reward,
        arm_sequence: trace,
        elliptical_potential: policy.elliptical_potential(),
    })
}

/// Runs paths `0..replications` on `workers` threads and feeds each result
/// to `sink` in path order. At most `workers * 64` results are buffered.
pub fn run_monte_carlo<F>(config: &RunConfig, workers: usize, mut sink: F) -> Result<()>
where
    F: FnMut(u64, EpisodeResult) -> Result<()>,
{
    config.validate()?;
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
    let batch = (workers * PATHS_PER_WORKER) as u64;
    let mut start = 0;
    while start < config.replications {
        let end = (start + batch).min(config.replications);
        let results: Vec<EpisodeResult> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|p| run_episode(&config.environment, &config.policy, config.path_seed(p), config.record_trace))
                .collect::<Result<_>>()
        })?;
        for (offset, res) in results.into_iter().enumerate() {
            sink(start + offset as u64, res)?;
        }
        start = end;
    }
    Ok(())
}

/// [`run_monte_carlo`] into a vector.
pub fn collect(config: &RunConfig, workers: usize) -> Result<Vec<EpisodeResult>> {
    let mut out = Vec::with_capacity(config.replications as usize);
    run_monte_carlo(config, workers, |_, r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}
