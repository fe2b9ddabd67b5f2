
use super::{Method, SpecialValue, is_finite, ln_gamma};
use crate::error::domain;
use crate::quadrature::{DeDomain, double_exponential};
use crate::{C64, Error, Result};

fn is_nonpositive_integer(b: C64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()
}

fn series(lambda: C64, b: C64, z: C64) -> Result<SpecialValue> {
    let mut t = C64::new(1.0, 0.0);
    let mut sum = t;
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    let mut last = 0.0;
    for n in 0..20_000usize {
        let nf = n as f64;
        t = t * (lambda + nf) / (b + nf) * z / (nf + 1.0);
        sum += t;
        last = t.norm();
        abs_sum += last;
        if !is_finite(sum) {
            return Err(Error::Overflow("kummer_1f1"));
        }
        if last == 0.0 {
            break;
        }
        if last < 1e-16 * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let err = 2.0 * last + 8.0 * f64::EPSILON * abs_sum;
    Ok(SpecialValue::new(sum, Method::Series, err))
}

/// `∫_0^∞ e^{-v} v^{p-1} (1 + v·c)^{q-1} dv` by exp-sinh.
fn ray_integral(p: C64, q: C64, c: C64) -> Result<(C64, f64)> {
    let out = double_exponential(
        |v, _, _| {
            let base = C64::new(v, 0.0).powc(p - 1.0) * (-v).exp();
            if base.norm() == 0.0 { base } else { base * (1.0 + c * v).powc(q - 1.0) }
        },
        DeDomain::HalfLine,
        0.0,
        1e-14,
    )?;
    Ok((out.value, out.est_error))
}

/// ₁F₁(λ; b; z) from its Euler integral, with both endpoint rays turned to
/// the direction of steepest descent of `e^{zt}`. Needs `Re λ > 0`,
/// `Re(b-λ) > 0`, and `z` off the real axis.
pub fn kummer_1f1_quadrature(lambda: C64, b: C64, z: C64) -> Result<SpecialValue> {
    let mu = b - lambda;
    if !(lambda.re > 0.0 && mu.re > 0.0) {
        return Err(domain("kummer integral needs Re λ > 0 and Re(b-λ) > 0"));
    }
    let r = z.norm();
    if r == 0.0 {
        return Ok(SpecialValue::new(C64::new(1.0, 0.0), Method::Series, 0.0));
    }
    let u = -z.conj() / r;
    if u.im == 0.0 {
        return Err(domain("kummer integral rays need z off the real axis"));
    }
    let (j0, e0) = ray_integral(lambda, mu, -u / r)?;
    let (j1, e1) = ray_integral(mu, lambda, u / r)?;
    let c0 = u.powc(lambda) * C64::new(r, 0.0).powc(-lambda);
    let c1 = z.exp() * u * (-u).powc(mu - 1.0) * C64::new(r, 0.0).powc(-mu);
    let norm = (ln_gamma(b) - ln_gamma(lambda) - ln_gamma(mu)).exp();
    let v = norm * (c0 * j0 - c1 * j1);
    if !is_finite(v) {
        return Err(Error::Overflow("kummer_1f1"));
    }
    let err = norm.norm() * (c0.norm() * e0 + c1.norm() * e1) + 16.0 * f64::EPSILON * v.norm();
    Ok(SpecialValue::new(v, Method::Quadrature, err))
}

/// Confluent hypergeometric function ₁F₁(λ; b; z).
pub fn kummer_1f1(lambda: C64, b: C64, z: C64) -> Result<SpecialValue> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole("kummer_1f1"));
    }
    if z.norm() == 0.0 {
        return Ok(SpecialValue::new(C64::new(1.0, 0.0), Method::Series, 0.0));
    }
    let r = z.norm();
    let terminating = is_nonpositive_integer(lambda);
    if r <= 8.0 || r - z.re <= 7.0 || terminating {
        return series(lambda, b, z);
    }
    if r + z.re <= 7.0 {
        // Kummer's transformation moves z next to the positive axis
        let s = series(b - lambda, b, -z)?;
        let e = z.exp();
        return Ok(SpecialValue::new(e * s.value, s.method, e.norm() * s.est_error));
    }
    if lambda.re > 0.0 && (b - lambda).re > 0.0 {
        return kummer_1f1_quadrature(lambda, b, z);
    }
    series(lambda, b, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(kummer_1f1(c(0.3, 0.0), c(1.7, 0.0), c(0.0, 0.0)).unwrap().value, c(1.0, 0.0));
        let z = c(2.0, -1.0);
        let v = kummer_1f1(c(1.5, 0.0), c(1.5, 0.0), z).unwrap().value;
        assert!((v - z.exp()).norm() < 1e-14 * z.exp().norm());
        assert!(matches!(kummer_1f1(c(1.0, 0.0), c(-2.0, 0.0), z), Err(Error::Pole(_))));
    }

    #[test]
    fn reference_values() {
        // mpmath hyp1f1
        let cases = [
            (0.5, 1.0, 0.0, 5.0, 0.038762353613546794, -0.02895634244276901),
            (0.5, 0.8333333333333333, 0.0, 80.0, -0.054653104795348424, -0.085425316611968701),
            (1.5, 1.8333333333333333, 0.0, -60.0, -0.26565475139160742, -0.057331526253842559),
            (0.25, 2.0, -30.0, 0.0, 0.46199477965201196, 0.0),
        ];
        for (l, b, x, y, re, im) in cases {
            let v = kummer_1f1(c(l, 0.0), c(b, 0.0), c(x, y)).unwrap();
            let want = c(re, im);
            let e = (v.value - want).norm();
            assert!(e <= 1e-12 * want.norm(), "1F1({l};{b};{x}+{y}i) = {} vs {want}", v.value);
            assert!(e <= v.est_error + 1e-15, "estimate {} too small for {e}", v.est_error);
        }
    }

    #[test]
    fn series_matches_integral() {
        let (l, b, z) = (c(0.5, 0.0), c(1.0, 0.0), c(0.0, 5.0));
        let s = kummer_1f1(l, b, z).unwrap();
        let q = kummer_1f1_quadrature(l, b, z).unwrap();
        assert_eq!(s.method, Method::Series);
        assert!((s.value - q.value).norm() <= s.est_error + q.est_error);
    }
}
