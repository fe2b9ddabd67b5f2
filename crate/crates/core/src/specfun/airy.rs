use core::f64::consts::PI;

use super::{Method, SpecialValue};
use crate::C64;

const AI0: f64 = 0.355_028_053_887_817_24;
const AIP0: f64 = -0.258_819_403_792_806_8;

/// One Taylor step of `w'' = x w` from `x0` by `h`.
/// Returns `(w, w', error bound)`.
fn taylor_step(x0: f64, w: f64, wp: f64, h: f64) -> (f64, f64, f64) {
    let (mut cm1, mut c0, mut c1) = (0.0, w, wp);
    let mut val = w + wp * h;
    let mut der = wp;
    let mut abs_sum = w.abs() + (wp * h).abs();
    let mut hk = h; // h^(k+1)
    let mut quiet = 0;
    for k in 0..400usize {
        let c2 = (x0 * c0 + cm1) / ((k + 2) * (k + 1)) as f64;
        der += (k + 2) as f64 * c2 * hk;
        hk *= h;
        let term = c2 * hk;
        val += term;
        abs_sum += term.abs() * (k + 3) as f64;
        if term.abs() <= 1e-18 * (val.abs() + der.abs() + 1e-300) {
            quiet += 1;
            if quiet >= 3 && k > 4 {
                break;
            }
        } else {
            quiet = 0;
        }
        cm1 = c0;
        c0 = c1;
        c1 = c2;
    }
    (val, der, 4.0 * f64::EPSILON * abs_sum)
}

/// Ai and Ai′ for x < 0 and |x| moderate: march the ODE from the origin.
fn march(x: f64) -> (f64, f64, f64) {
    let first = x.max(-2.0);
    let (mut w, mut wp, mut err) = taylor_step(0.0, AI0, AIP0, first);
    let mut x0 = first;
    while x0 > x {
        let h = (x - x0).max(-0.5);
        let (a, b, e) = taylor_step(x0, w, wp, h);
        w = a;
        wp = b;
        err = 1.5 * err + e;
        x0 += h;
    }
    (w, wp, err)
}

/// `∫_0^∞ e^{-ξ(cosh t - 1)} cosh(νt) dt` by the trapezoid rule with step h.
fn k_scaled(nu: f64, xi: f64, h: f64) -> f64 {
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let s = (0.5 * t).sinh();
        let v = (-2.0 * xi * s * s).exp() * (nu * t).cosh();
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    sum * h
}

/// `e^{ξ} K_ν(ξ)` with an error estimate from step halving.
fn k_bessel_scaled(nu: f64, xi: f64) -> (f64, f64) {
    let coarse = k_scaled(nu, xi, 0.25);
    let fine = k_scaled(nu, xi, 0.125);
    (fine, (fine - coarse).abs() + 4.0 * f64::EPSILON * fine)
}

/// Asymptotic forms for x ≤ -9: returns (Ai, Ai′, error).
fn oscillatory_asymptotic(x: f64) -> (f64, f64, f64) {
    let r = -x;
    let xi = 2.0 / 3.0 * r.powf(1.5);
    let (s, c) = (xi - 0.25 * PI).sin_cos();
    // Σ (-1)^k u_{2k} ξ^{-2k}, Σ (-1)^k u_{2k+1} ξ^{-2k-1}, same for v
    let (mut ue, mut uo, mut ve, mut vo) = (1.0, 0.0, 1.0, 0.0);
    let mut u = 1.0;
    let mut p = 1.0;
    let mut last = f64::INFINITY;
    let mut omitted = 0.0;
    for k in 1..200usize {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        p /= xi;
        let mag = (u * p).abs().max((v * p).abs());
        if mag >= last || mag < 1e-17 {
            omitted = mag;
            break;
        }
        last = mag;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * u * p;
            ve += sign * v * p;
        } else {
            uo += sign * u * p;
            vo += sign * v * p;
        }
    }
    let norm = 1.0 / PI.sqrt();
    let ai = norm * r.powf(-0.25) * (c * ue + s * uo);
    let aip = norm * r.powf(0.25) * (s * ve - c * vo);
    let phase_err = 4.0 * f64::EPSILON * xi;
    let err = norm * r.powf(0.25) * (omitted + phase_err) + 4.0 * f64::EPSILON * ai.abs();
    (ai, aip, err)
}

fn airy_pair(x: f64) -> (f64, f64, f64, f64, Method) {
    if x.abs() <= 2.0 {
        let (a, b, e) = taylor_step(0.0, AI0, AIP0, x);
        (a, b, e, e, Method::Series)
    } else if x > 2.0 {
        let xi = 2.0 / 3.0 * x.powf(1.5);
        let damp = (-xi).exp();
        let (k13, e13) = k_bessel_scaled(1.0 / 3.0, xi);
        let (k23, e23) = k_bessel_scaled(2.0 / 3.0, xi);
        let ca = (x / 3.0).sqrt() / PI * damp;
        let cp = -x / (PI * 3f64.sqrt()) * damp;
        (ca * k13, cp * k23, ca * e13, cp.abs() * e23, Method::Quadrature)
    } else if x > -9.0 {
        let (a, b, e) = march(x);
        (a, b, e, e * (1.0 + x.abs().sqrt()), Method::Series)
    } else {
        let (a, b, e) = oscillatory_asymptotic(x);
        (a, b, e, e * x.abs().sqrt(), Method::Asymptotic)
    }
}

/// Airy function Ai on the real line.
pub fn airy_ai(x: f64) -> SpecialValue {
    let (a, _, e, _, m) = airy_pair(x);
    SpecialValue::new(C64::new(a, 0.0), m, e)
}

/// Derivative Ai′ on the real line.
pub fn airy_ai_prime(x: f64) -> SpecialValue {
    let (_, b, _, e, m) = airy_pair(x);
    SpecialValue::new(C64::new(b, 0.0), m, e)
}
