use thiserror::Error;

/// Errors produced while evaluating systems, controllers and simulations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A user-supplied field returned NaN or infinity.
    #[error("non-finite value from {field} (component {component})")]
    Evaluation { field: &'static str, component: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A precondition of a controller formula does not hold for the given data.
    #[error("domain error: {0}")]
    Domain(String),

    /// Data that a valid CLF/CBF pair can never produce.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("integration failed at step {step} (t = {time}): {reason}")]
    Integration {
        step: usize,
        time: f64,
        reason: String,
    },

    #[error("controller failed at step {step} (t = {time}): {source}")]
    Controller {
        step: usize,
        time: f64,
        source: Box<Error>,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
