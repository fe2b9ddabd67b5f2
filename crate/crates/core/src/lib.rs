//! Classical and uniform asymptotic expansions of integrals.
//!
//! The crate is organised around a small number of engines:
//!
//! - [`specfun`]: special functions that appear as prefactors (gamma, complex
//!   erfc, Airy, Fresnel-type integrals, Kummer's function, `E1`).
//! - [`jets`]: truncated Taylor series arithmetic. Every coefficient recursion
//!   that needs derivatives runs through it.
//! - [`classical`]: Watson's lemma, Laplace's method and their worked instances.
//! - [`oscillatory`]: stationary phase without neutralizers.
//! - [`uniform`]: expansions with erfc and Airy leading terms.
//! - [`oracle`]: quadrature and series references used to verify all of the above.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod classical;
pub mod error;
pub mod expansion;
pub mod jets;
pub mod oracle;
pub mod oscillatory;
pub mod quadrature;
pub mod specfun;
pub mod uniform;

pub use error::{Error, Result};
pub use expansion::{EvalReport, Expansion, Prefactor, Scale, Stream};
pub use jets::{Expr, Jet, JetProgram, TwoPointSplit};


/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

pub(crate) fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
