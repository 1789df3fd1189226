//! Reference experiment grids.
//!
//! The K-armed grid crosses six policies with four values of the tuning knob
//! `kappa = sigma * sqrt(eta)` on a Gaussian instance with `T = 500`. Every
//! cell uses the same master seed, so path `p` sees the same environment
//! stream in every cell (common random numbers).

use serde::{Deserialize, Serialize};

use crate::analysis::{BoundName, TailBound};
use crate::bonus::{BonusSpec, Design};
use crate::error::Result;
use crate::model::{ActionSets, BanditInstance, EpisodeResult, LinearInstance};
use crate::policy::PolicySpec;
use crate::sim::{collect, Environment, RunConfig};

pub const KAPPAS: [f64; 4] = [0.1, 0.2, 0.4, 0.8];
pub const REFERENCE_HORIZON: u64 = 500;
pub const REFERENCE_REPLICATIONS: u64 = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridPolicy {
    Se,
    Ucb,
    Ts,
    SeNew,
    UcbNew,
    UcbAny,
}

impl GridPolicy {
    pub const ALL: [GridPolicy; 6] = [
        GridPolicy::Se,
        GridPolicy::Ucb,
        GridPolicy::Ts,
        GridPolicy::SeNew,
        GridPolicy::UcbNew,
        GridPolicy::UcbAny,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GridPolicy::Se => "SE",
            GridPolicy::Ucb => "UCB",
            GridPolicy::Ts => "TS",
            GridPolicy::SeNew => "SE_new",
            GridPolicy::UcbNew => "UCB_new",
            GridPolicy::UcbAny => "UCB_any",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.label() == label)
    }

    /// Policy for tuning knob `kappa` on a `arms`-armed instance.
    ///
    /// The any-time cell uses `eta = K * kappa^2`, which cancels the `sqrt(K)`
    /// divisor of its radius; the reference table values are only reached
    /// under that scaling.
    pub fn spec(self, kappa: f64, arms: usize) -> PolicySpec {
        let bonus = |design| BonusSpec::kappa(design, kappa);
        match self {
            GridPolicy::Se => PolicySpec::Se { bonus: bonus(Design::Standard) },
            GridPolicy::Ucb => PolicySpec::Ucb { bonus: bonus(Design::Standard) },
            GridPolicy::Ts => PolicySpec::Ts { kappa },
            GridPolicy::SeNew => PolicySpec::Se { bonus: bonus(Design::NewSqrtT) },
            GridPolicy::UcbNew => PolicySpec::Ucb { bonus: bonus(Design::NewSqrtT) },
            GridPolicy::UcbAny => PolicySpec::Ucb {
                bonus: BonusSpec::sigma_eta(Design::AnyTime, 1.0, arms as f64 * kappa * kappa),
            },
        }
    }
}

/// `theta = (0.2, 0.8)`, `sigma0 = 1`, `T = 500`.
pub fn two_arm_instance() -> BanditInstance {
    BanditInstance::new(vec![0.2, 0.8], 1.0, REFERENCE_HORIZON).expect("valid reference instance")
}

/// `theta = (0.2, 0.4, 0.6, 0.8)`, `sigma0 = 1`, `T = 500`.
pub fn four_arm_instance() -> BanditInstance {
    BanditInstance::new(vec![0.2, 0.4, 0.6, 0.8], 1.0, REFERENCE_HORIZON).expect("valid reference instance")
}

/// One `(policy, kappa)` cell of the grid.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub policy: GridPolicy,
    pub kappa: f64,
    pub results: Vec<EpisodeResult>,
}

impl GridCell {
    pub fn rewards(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.cumulative_reward).collect()
    }
}

pub fn run_grid(instance: &BanditInstance, replications: u64, master_seed: u64, workers: usize) -> Result<Vec<GridCell>> {
    let mut cells = Vec::with_capacity(GridPolicy::ALL.len() * KAPPAS.len());
    for policy in GridPolicy::ALL {
        for kappa in KAPPAS {
            let config = RunConfig {
                environment: Environment::Mab(instance.clone()),
                policy: policy.spec(kappa, instance.arms()),
                replications,
                master_seed,
                record_trace: false,
            };
            cells.push(GridCell {
                policy,
                kappa,
                results: collect(&config, workers)?,
            });
        }
    }
    Ok(cells)
}

/// `theta = (1, 0)` with noise scale `sigma0` and `T = 500`.
pub fn separated_instance(sigma0: f64) -> BanditInstance {
    BanditInstance::new(vec![1.0, 0.0], sigma0, REFERENCE_HORIZON).expect("valid separated instance")
}

/// A policy/environment pairing in the fragility study.
#[derive(Debug, Clone)]
pub struct FragilityCase {
    /// `small_eta` or `misspecified`.
    pub scenario: &'static str,
    pub label: String,
    pub environment: Environment,
    pub policy: PolicySpec,
    /// Closed-form bound covering this case, when one applies.
    pub bound: Option<TailBound>,
}

impl FragilityCase {
    pub fn bound_name(&self) -> Option<BoundName> {
        self.bound.map(|b| b.name())
    }
}

/// Small-kappa runs on a well-separated instance, then consistent policies
/// whose assumed noise scale (1) undershoots the true one.
pub fn fragility_cases() -> Vec<FragilityCase> {
    let kappa = 0.1;
    let separated = Environment::Mab(separated_instance(1.0));
    let new_bound = TailBound::ThmK {
        arms: 2,
        horizon: REFERENCE_HORIZON,
        sigma: 1.0,
        eta: kappa * kappa,
    };
    let mut cases = vec![
        FragilityCase {
            scenario: "small_eta",
            label: "UCB".into(),
            environment: separated.clone(),
            policy: GridPolicy::Ucb.spec(kappa, 2),
            bound: None,
        },
        FragilityCase {
            scenario: "small_eta",
            label: "UCB_new".into(),
            environment: separated.clone(),
            policy: GridPolicy::UcbNew.spec(kappa, 2),
            bound: Some(new_bound),
        },
        FragilityCase {
            scenario: "small_eta",
            label: "SE".into(),
            environment: separated.clone(),
            policy: GridPolicy::Se.spec(kappa, 2),
            bound: None,
        },
        FragilityCase {
            scenario: "small_eta",
            label: "SE_new".into(),
            environment: separated,
            policy: GridPolicy::SeNew.spec(kappa, 2),
            bound: Some(new_bound),
        },
    ];
    for sigma0 in [1.0, 2.0] {
        let env = Environment::Mab(separated_instance(sigma0));
        for (policy, kappa) in [(GridPolicy::Ts, 0.2), (GridPolicy::Ucb, 0.2), (GridPolicy::UcbNew, 0.2)] {
            cases.push(FragilityCase {
                scenario: "misspecified",
                label: policy.label().into(),
                environment: env.clone(),
                policy: policy.spec(kappa, 2),
                bound: None,
            });
        }
    }
    cases
}

pub const LINEAR_DIM: usize = 4;
pub const LINEAR_ACTIONS: usize = 16;
pub const LINEAR_HORIZON: u64 = 1000;

/// `d = 4` linear instance with 16 random unit actions drawn per episode.
pub fn linear_instance() -> LinearInstance {
    LinearInstance::new(
        vec![0.8, -0.6, 0.4, 0.2],
        ActionSets::RandomFixed { count: LINEAR_ACTIONS },
        1.0,
        LINEAR_HORIZON,
    )
    .expect("valid linear instance")
}

/// Linear UCB with `sigma = 1`, `eta = 1`.
pub fn linear_ucb() -> PolicySpec {
    PolicySpec::LinUcb {
        bonus: BonusSpec::sigma_eta(Design::Linear, 1.0, 1.0),
        reinvert_every: None,
    }
}
