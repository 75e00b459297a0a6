use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The TX–RX distance is deterministic at this slot (zero variance), so
    /// no distance density or mixture exists.
    #[error("degenerate distance variance at slot k = {k}")]
    DegenerateVariance { k: u32 },

    #[error("mean TX-RX distance {distance} m is not positive at slot k = {k}")]
    NonPositiveDistance { k: u32, distance: f64 },

    #[error("quadrature did not reach tolerance: value {value}, error estimate {error}")]
    AccuracyNotReached { value: f64, error: f64 },

    #[error("integrand is not finite at {at}")]
    NonFiniteIntegrand { at: f64 },

    /// Quadratic decision statistic has no real threshold: the likelihood
    /// ratio test always decides the same hypothesis.
    #[error("negative squared radius gamma = {gamma} at slot {slot}")]
    NegativeGamma { slot: usize, gamma: f64 },

    #[error("empty sample")]
    EmptySample,
}
