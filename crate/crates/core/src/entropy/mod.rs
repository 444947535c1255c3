//! Volume entropy of weighted word metrics.

mod ball;
mod bounds;
mod demo;
mod free;
mod optimize;

pub use ball::{ball_count, power_distance, Ball, WordMetric, DEFAULT_NODE_CAP};
pub use bounds::{best_rational, entropy_bounds, EntropyEstimate, Method, MAX_DENOMINATOR};
pub use demo::{nonstrict_demo, redundant_weights, NonStrictReport};
pub use free::{entropy_gradient, free_entropy, uniform_free_entropy};
pub use optimize::{
    minimize_entropy, project, EntropyOracle, FnOracle, FreeEntropyOracle, MinimizeOptions, MinimizeResult,
};
