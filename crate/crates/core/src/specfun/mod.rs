//! Special functions used as expansion prefactors.
//!
//! Every routine returns a [`SpecialValue`] carrying the method used and an
//! error estimate the routine commits to.

mod airy;
mod erf;
mod expint;
mod fresnel;
mod gamma;
mod kummer;

pub use airy::{airy_ai, airy_ai_prime};
pub use erf::{erf, erfc, erfc_asymptotic, erfcx};
pub use expint::exp_integral_e1;
pub use fresnel::fresnel_phi;
pub use gamma::{gamma, gamma_real, ln_gamma, pochhammer, rgamma};
pub use kummer::kummer_1f1;

use crate::C64;

/// How a special-function value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Asymptotic,
    ContinuedFraction,
    Quadrature,
}

/// A special-function value with a committed error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: C64,
    pub method: Method,
    pub est_error: f64,
}

impl SpecialValue {
    pub(crate) fn new(value: C64, method: Method, est_error: f64) -> Self {
        SpecialValue { value, method, est_error }
    }
}

pub(crate) fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
