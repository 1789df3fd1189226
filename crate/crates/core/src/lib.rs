//! Stochastic bandit policies with light-tailed regret, and the Monte Carlo
//! machinery to measure their full regret distributions.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds the environment types and exact regret accounting.
//! * [`bonus`] holds every confidence-radius schedule.
//! * [`policy`] holds the decision rules (elimination, UCB, Thompson
//!   sampling, explore-then-commit, linear UCB and a uniform baseline).
//! * [`env`] draws rewards from per-path random streams.
//! * [`sim`] runs single episodes and deterministic parallel batches.
//! * [`analysis`] turns batches into summaries, tail probabilities and
//!   closed-form tail-bound values.
//! * [`scenarios`] pins down the reference experiment grids.

pub mod analysis;
pub mod bonus;
pub mod env;
mod error;
pub mod model;
pub mod policy;
pub mod rng;
pub mod scenarios;
pub mod sim;

pub use bonus::{BonusSchedule, BonusSpec, Design};
pub use error::{Error, Result};
pub use model::{BanditInstance, EpisodeResult, LinearInstance, NoiseFamily};
pub use policy::PolicySpec;
pub use sim::{Environment, RunConfig};

/// Master seed used when none is supplied.
pub const DEFAULT_MASTER_SEED: u64 = 20240;
