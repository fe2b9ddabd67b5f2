use core::f64::consts::PI;

use super::{Method, SpecialValue, erfc};
use crate::error::domain;
use crate::{C64, Result};

/// `∫_x^∞ e^{iωt²} dt` via the complex erfc, with its error estimate.
fn tail(x: f64, omega: f64) -> Result<(C64, f64)> {
    let rot = C64::from_polar(1.0, 0.25 * PI);
    let pre = rot * (0.5 * PI.sqrt() / omega.sqrt());
    if x == f64::INFINITY {
        return Ok((C64::new(0.0, 0.0), 0.0));
    }
    if x == f64::NEG_INFINITY {
        return Ok((pre * 2.0, 4.0 * f64::EPSILON * pre.norm()));
    }
    let e = erfc(rot.conj() * (omega.sqrt() * x))?;
    Ok((pre * e.value, pre.norm() * e.est_error))
}

/// Fresnel-type integral `Φ_{a,b}(ω) = ∫_a^b e^{iωt²} dt` for `a ≤ b`.
///
/// Endpoints may be infinite. Evaluated as a difference of complex erfc
/// values for every `a`, `b`, including values near zero.
pub fn fresnel_phi(a: f64, b: f64, omega: f64) -> Result<SpecialValue> {
    if a.is_nan() || b.is_nan() || !(a <= b) {
        return Err(domain("fresnel_phi needs a <= b"));
    }
    if !(omega >= 0.0) {
        return Err(domain("fresnel_phi needs omega >= 0"));
    }
    if a == b {
        return Ok(SpecialValue::new(C64::new(0.0, 0.0), Method::Series, 0.0));
    }
    if omega == 0.0 {
        if !(a.is_finite() && b.is_finite()) {
            return Err(domain("fresnel_phi diverges at omega = 0 on an infinite interval"));
        }
        return Ok(SpecialValue::new(C64::new(b - a, 0.0), Method::Series, f64::EPSILON * (b - a)));
    }
    let (fa, ea) = tail(a, omega)?;
    let (fb, eb) = tail(b, omega)?;
    let v = fa - fb;
    Ok(SpecialValue::new(v, Method::ContinuedFraction, ea + eb + 2.0 * f64::EPSILON * (fa.norm() + fb.norm())))
}
