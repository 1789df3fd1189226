//! From raw episode results to reported quantities: summaries, tail
//! exceedance probabilities, histograms and closed-form tail bounds.

pub mod bounds;
mod histogram;
mod stats;
mod tail;

pub use bounds::{BoundName, BoundValue, NeatVariant, TailBound};
pub use histogram::{histogram, Histogram, DEFAULT_BINS};
pub use stats::{
    compensated_sum, describe, quantile_sorted, summarize, Distribution, RunSummary, QUANTILE_LEVELS,
};
pub use tail::{
    empirical_tail, exceedance, threshold_grid, wilson_interval, EmpiricalTail, TailFunctional, TailReport,
    WILSON_Z95,
};
