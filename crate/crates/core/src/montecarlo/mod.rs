//! Monte Carlo simulator of the exact model: full shot-noise harvested energy
//! and SINR with i.i.d. Rayleigh fading, used as the reference for the
//! analytic approximations.
//!
//! Runs are split into fixed-size blocks, each driven by its own ChaCha
//! stream derived from the master seed, so a given seed yields the same
//! counts for any number of worker threads.

mod estimate;
mod sampling;
mod shot;

pub use estimate::{
    estimate, result_from_tally, simulate, simulate_with_radius, EstimatorResult, Geometry, SeedSpec, Tally, TierTally,
    BLOCK_SIZE, MIN_SAMPLES,
};
pub use sampling::{sample_center_distance, sample_phi1, tail_mean, truncation_radius, Point, Realization};
pub use shot::{harvested_energy, serving_tier, sinr};
