use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("series did not converge after {iterations} terms (last term {last_term:e}, partial sum {partial_sum:e})")]
    NoConvergence {
        iterations: usize,
        last_term: f64,
        partial_sum: f64,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("radial grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("integration became unstable at t = {time}; try dt <= {suggested_dt:e}")]
    Unstable { time: f64, suggested_dt: f64 },

    #[error("requested {requested} samples exceeds the budget of {budget}")]
    TooLarge { requested: usize, budget: usize },

    #[error("phase bin {bin} has only {count} samples (need at least {required})")]
    SparseBin {
        bin: usize,
        count: usize,
        required: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
