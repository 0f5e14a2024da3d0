use alloc::boxed::Box;
use alloc::string::String;

use crate::recurrence::RecurrenceTrace;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("division by zero")]
    DivideByZero,
    #[error("non-finite matrix or coefficient entry")]
    NonFinite,
    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("root iteration did not converge within {iterations} sweeps")]
    RootFindingFailure { iterations: usize },
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("kernel is degenerate: no terms of degree >= 1")]
    DegenerateKernel,
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("c_{p} is not positive, so a_p = c_p^(-1/p) is not a positive normalizer")]
    SignDegeneracy { p: usize, partial: Box<RecurrenceTrace> },
    #[error("horizon {horizon} is below the required {required}")]
    InsufficientHorizon { horizon: usize, required: usize },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("spectral norm {norm:e} exceeded the cap {cap:e} at p = {p} (q0 = {q0})")]
    NormBlowup { q0: usize, p: usize, norm: f64, cap: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("insufficient data: {have} usable points, need {need}")]
    InsufficientData { have: usize, need: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
