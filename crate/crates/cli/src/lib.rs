//! Driver behind the `asymptotika` binary: a method registry, oracle
//! comparisons, parameter sweeps and remainder-order fits.

pub mod commands;
pub mod fit;
pub mod grid;
pub mod methods;
pub mod output;
pub mod params;

pub use commands::{Comparison, Evaluation, SweepRow, SweepSpec, TermRow, compare, convergence, expand, sweep};
pub use fit::{ConvergenceFit, FitStatus};
pub use grid::{Grid, Spacing};
pub use methods::{METHODS, Method, lookup};
pub use params::Params;

/// Terms used when `--terms` is not given.
pub const DEFAULT_TERMS: usize = 6;

/// Oracle tolerance used when `--tol` is not given.
pub const DEFAULT_TOL: f64 = 1e-13;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Numerical {
        context: String,
        #[source]
        source: asymptotika::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical { .. } | CliError::Io(_) | CliError::Csv(_) => 2,
        }
    }
}

/// Worker count from `ASYMPTOTIKA_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("ASYMPTOTIKA_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}
