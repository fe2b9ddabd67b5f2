use alloc::vec::Vec;
use core::f64::consts::FRAC_2_SQRT_PI;

use super::{Method, SpecialValue, is_finite};
use crate::expansion::EvalReport;
use crate::{C64, Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Maclaurin series of erf. Returns the value and an error bound.
fn erf_series(z: C64) -> (C64, f64) {
    let z2 = z * z;
    let mut t = z;
    let mut sum = z;
    let mut abs_sum = z.norm();
    let mut last = z.norm();
    for n in 1..400 {
        t = -t * z2 / n as f64;
        let c = t / (2 * n + 1) as f64;
        sum += c;
        last = c.norm();
        abs_sum += last;
        if last <= 1e-17 * sum.norm() && n as f64 > z2.norm() {
            break;
        }
    }
    let err = FRAC_2_SQRT_PI * (2.0 * last + 4.0 * f64::EPSILON * abs_sum);
    (sum * FRAC_2_SQRT_PI, err)
}

/// Laplace continued fraction for erfcx on Re z ≥ 0, |z| not small.
fn erfcx_cf(z: C64) -> (C64, usize) {
    let tiny = 1e-300;
    let mut f = z;
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    let mut k = 1;
    while k < 20_000 {
        let a = 0.5 * k as f64;
        d = z + d * a;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        d = 1.0 / d;
        c = z + a / c;
        if c.norm() < tiny {
            c = C64::new(tiny, 0.0);
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 0.5 * f64::EPSILON {
            break;
        }
        k += 1;
    }
    (FRAC_1_SQRT_PI / f, k)
}

/// Near the origin and near the imaginary axis the series is used; the
/// continued fraction covers the rest of the right half-plane.
fn use_series(z: C64) -> bool {
    let r = z.norm();
    r < 1.5 || (r < 6.0 && z.arg().abs() > 1.3)
}

fn checked(value: C64, method: Method, err: f64) -> Result<SpecialValue> {
    if is_finite(value) && err.is_finite() {
        Ok(SpecialValue::new(value, method, err))
    } else {
        Err(Error::Overflow("erfc"))
    }
}

/// Complementary error function for complex argument.
pub fn erfc(z: C64) -> Result<SpecialValue> {
    if z.re < 0.0 {
        let r = erfc(-z)?;
        return checked(2.0 - r.value, r.method, r.est_error + 2.0 * f64::EPSILON);
    }
    if use_series(z) {
        let (e, err) = erf_series(z);
        let v = 1.0 - e;
        return checked(v, Method::Series, err + f64::EPSILON * (1.0 + v.norm()));
    }
    let (w, _) = erfcx_cf(z);
    let z2 = z * z;
    if -z2.re > 709.0 {
        return Err(Error::Overflow("erfc"));
    }
    let v = (-z2).exp() * w;
    // relative: continued fraction plus the exponent's argument error
    let rel = 1e-14 + 2.0 * f64::EPSILON * z2.norm();
    checked(v, Method::ContinuedFraction, rel * v.norm())
}

/// Scaled complementary error function `e^{z²} erfc(z)`.
pub fn erfcx(z: C64) -> Result<SpecialValue> {
    if z.re < 0.0 {
        let r = erfcx(-z)?;
        let e = (z * z).exp();
        let v = 2.0 * e - r.value;
        let err = r.est_error + 4.0 * f64::EPSILON * (1.0 + (z * z).norm()) * e.norm();
        return checked(v, r.method, err);
    }
    if use_series(z) {
        let (e, err) = erf_series(z);
        let ez = (z * z).exp();
        let v = ez * (1.0 - e);
        return checked(v, Method::Series, (err + f64::EPSILON) * ez.norm() + f64::EPSILON * v.norm());
    }
    let (w, _) = erfcx_cf(z);
    checked(w, Method::ContinuedFraction, 1e-14 * w.norm())
}

/// Error function for complex argument.
pub fn erf(z: C64) -> Result<SpecialValue> {
    let zr = if z.re < 0.0 { -z } else { z };
    if use_series(zr) {
        let (v, err) = erf_series(z);
        return checked(v, Method::Series, err);
    }
    let r = erfc(z)?;
    checked(1.0 - r.value, r.method, r.est_error + f64::EPSILON)
}

/// Partial sums of the large-|z| expansion
/// `erfc z ~ e^{-z²}/(z√π) Σ (-1)^k (2k-1)!!/(2z²)^k`.
pub fn erfc_asymptotic(z: C64, n_terms: usize) -> EvalReport {
    let lead = (-z * z).exp() * FRAC_1_SQRT_PI / z;
    let inv = 1.0 / (2.0 * z * z);
    let mut terms = Vec::with_capacity(n_terms);
    let mut t = lead;
    for k in 0..n_terms {
        if k > 0 {
            t = -t * inv * (2 * k - 1) as f64;
        }
        terms.push(t);
    }
    EvalReport::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from mpmath at 30 digits.
    const CASES: [(f64, f64, f64, f64); 8] = [
        (0.5, 0.0, 0.47950012218695346, 0.0),
        (2.0, 0.0, 0.004677734981047266, 0.0),
        (5.0, 0.0, 1.5374597944280349e-12, 0.0),
        (1.0, 1.0, -0.31615128169794764, -0.19045346923783471),
        (3.0, -2.0, 0.0010367211431827311, -1.1546724379290603e-5),
        (0.3, 4.0, -865229.15857056818, 804043.16978946646),
        (2.5, 2.0, -0.00653323346413905, 0.017089855566587657),
        (-1.0, 0.5, 1.9507097283189572, -0.18797346722338331),
    ];

    #[test]
    fn erfc_matches_reference() {
        for &(x, y, re, im) in &CASES {
            let v = erfc(C64::new(x, y)).unwrap();
            let want = C64::new(re, im);
            let rel = (v.value - want).norm() / want.norm();
            assert!(rel < 1e-12, "erfc({x},{y}) = {} rel {rel:e}", v.value);
            assert!((v.value - want).norm() <= v.est_error + 1e-14 * want.norm());
        }
    }

    #[test]
    fn erfc_at_zero_and_reflection() {
        assert_eq!(erfc(C64::new(0.0, 0.0)).unwrap().value, C64::new(1.0, 0.0));
        let z = C64::new(0.7, 0.0);
        let a = erfc(-z).unwrap().value;
        let b = erfc(z).unwrap().value;
        assert_relative_eq!(a.re, 2.0 - b.re, epsilon = 1e-15);
    }

    #[test]
    fn asymptotic_coefficients() {
        let z = C64::new(3.0, 0.0);
        let r = erfc_asymptotic(z, 4);
        let lead = r.terms[0];
        let z2 = 9.0;
        let ratios: Vec<f64> = r.terms.iter().map(|t| (t / lead).re).collect();
        assert_relative_eq!(ratios[1], -0.5 / z2, max_relative = 1e-14);
        assert_relative_eq!(ratios[2], 0.75 / (z2 * z2), max_relative = 1e-14);
        assert_relative_eq!(ratios[3], -15.0 / 8.0 / (z2 * z2 * z2), max_relative = 1e-14);
        assert_relative_eq!(erfc_asymptotic(C64::new(1.3, 0.2), 1).value().re,
            ((-C64::new(1.3, 0.2) * C64::new(1.3, 0.2)).exp() * FRAC_1_SQRT_PI / C64::new(1.3, 0.2)).re);
    }

    #[test]
    fn asymptotic_agrees_at_three() {
        let z = C64::new(3.0, 0.0);
        let r = erfc_asymptotic(z, 5);
        let exact = erfc(z).unwrap().value;
        let four = r.partial_sums[3];
        assert!((four - exact).norm() <= r.term_mags[4]);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(erfc(C64::new(0.0, 40.0)), Err(Error::Overflow(_))));
    }
}
