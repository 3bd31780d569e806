//! Binary symmetric channel experiments under the all-zero-codeword
//! convention: exhaustive low-weight error injection, Monte Carlo frame
//! error rates, and the small-`alpha` slope law.

mod fer;
mod patterns;
mod rng;
mod slope;
mod verify;

use thiserror::Error;

use crate::decoder::DecodeError;

pub use fer::{
    estimate_from_source, fer_estimate, wilson_interval, FerOptions, FerPoint, StopRule,
};
pub use patterns::{binomial, BscPatterns, ColexPatterns, PatternSource};
pub use rng::{bsc_transmit, draw_flips, for_each_hit, trial_stream};
pub use slope::{dominant_term_model, slope_fit, SlopeFit, DEFAULT_FAILURE_FLOOR};
pub use verify::{exhaustive_verify, VerifyOptions, VerifyReport, DEFAULT_PATTERN_BUDGET};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("crossover probability {0} outside [0, 0.5]")]
    AlphaOutOfRange(f64),
    #[error("coupling ceiling {ceiling} is below alpha {alpha}")]
    CeilingBelowAlpha { alpha: f64, ceiling: f64 },
    #[error("stop rule needs min_failures >= 1 and max_trials >= 1")]
    InvalidStopRule,
    #[error("{required} patterns exceed the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("slope fit needs {needed}: {detail}")]
    InsufficientPoints {
        needed: &'static str,
        detail: String,
    },
}
