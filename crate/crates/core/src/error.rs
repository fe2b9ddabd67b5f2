use alloc::string::String;

/// Errors produced by the expansion engines, special functions and oracles.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("jet operation `{op}` needs a nonzero constant term")]
    ZeroConstantTerm { op: &'static str },

    #[error("jet of order {order} is too short for `{op}` (needs {needed})")]
    OrderExhausted {
        op: &'static str,
        order: usize,
        needed: usize,
    },

    #[error("series is not invertible at its anchor (linear coefficient is zero)")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("{0} overflows the double-precision exponent range")]
    Overflow(&'static str),

    #[error("{0}: argument on the branch cut")]
    BranchCut(&'static str),

    #[error("{0}: argument at a pole")]
    Pole(&'static str),

    #[error("stationary point of the phase near t = {at} in [{a}, {b}]; use bleistein_stationary")]
    StationaryPoint { at: f64, a: f64, b: f64 },

    #[error("no stationary point at 0 inside ({a}, {b}); use ibp_expand")]
    NoStationaryPoint { a: f64, b: f64 },

    #[error("quadrature did not converge: estimated error {est_error:e} after {evaluations} evaluations and {subdivisions} subdivisions")]
    NoConvergence {
        est_error: f64,
        evaluations: usize,
        subdivisions: usize,
    },

    #[error("quadrature backends disagree: |difference| = {difference:e} exceeds combined estimate {combined:e}")]
    OracleDisagreement { difference: f64, combined: f64 },

    #[error("singularity at {at} lies inside the rotated integration path")]
    SingularityOnPath { at: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
