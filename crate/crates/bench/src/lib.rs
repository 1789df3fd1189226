//! Shared fixtures for the criterion benchmarks.

use tailrisk_core::scenarios::{two_arm_instance, GridPolicy};
use tailrisk_core::{Environment, RunConfig};

/// The two-armed reference run with `replications` paths.
pub fn two_arm_run(policy: GridPolicy, kappa: f64, replications: u64) -> RunConfig {
    RunConfig {
        environment: Environment::Mab(two_arm_instance()),
        policy: policy.spec(kappa, 2),
        replications,
        master_seed: tailrisk_core::DEFAULT_MASTER_SEED,
        record_trace: false,
    }
}
