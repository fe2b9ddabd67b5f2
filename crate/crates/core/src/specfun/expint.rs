
use super::{Method, SpecialValue};
use crate::{C64, Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn series(z: C64) -> SpecialValue {
    // E1(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k·k!)
    let mut t = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut last = 0.0;
    for k in 1..500 {
        t = -t * z / k as f64;
        let c = t / k as f64;
        sum += c;
        last = c.norm();
        abs_sum += last;
        if last < 1e-17 * sum.norm() && k as f64 > z.norm() {
            break;
        }
    }
    let v = -EULER_GAMMA - z.ln() - sum;
    let err = 2.0 * last + 4.0 * f64::EPSILON * (abs_sum + EULER_GAMMA + z.ln().norm());
    SpecialValue::new(v, Method::Series, err)
}

fn continued_fraction(z: C64) -> Result<SpecialValue> {
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = C64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < f64::EPSILON {
            let v = h * (-z).exp();
            let err = v.norm() * (1e-15 + f64::EPSILON * (i as f64).sqrt() + 2.0 * f64::EPSILON * z.norm());
            return Ok(SpecialValue::new(v, Method::ContinuedFraction, err));
        }
    }
    Err(Error::NoConvergence { est_error: f64::INFINITY, evaluations: 20_000, subdivisions: 0 })
}

/// Exponential integral `E₁(z) = ∫_z^∞ e^{-t}/t dt`, principal branch.
pub fn exp_integral_e1(z: C64) -> Result<SpecialValue> {
    if z.norm() == 0.0 {
        return Err(Error::Pole("exp_integral_e1"));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut("exp_integral_e1"));
    }
    let r = z.norm();
    let v = if r <= 2.0 || (r <= 40.0 && r + z.re <= 6.0) { series(z) } else { continued_fraction(z)? };
    if !(v.value.re.is_finite() && v.value.im.is_finite()) {
        return Err(Error::Overflow("exp_integral_e1"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // mpmath e1
        let cases = [
            (1.0, 0.0, 0.21938393439552027, 0.0),
            (10.0, 0.0, 4.1569689296853243e-6, 0.0),
            (0.5, 0.0, 0.55977359477616081, 0.0),
            (3.0, 4.0, 0.00086395395897958511, 0.008786208377197442),
            (-5.0, 1e-3, -40.185263482751181, -3.1119100251333094),
        ];
        for (x, y, re, im) in cases {
            let v = exp_integral_e1(C64::new(x, y)).unwrap();
            let want = C64::new(re, im);
            assert!((v.value - want).norm() <= 1e-13 * want.norm(), "E1({x},{y}) = {}", v.value);
        }
    }

    #[test]
    fn branch_and_pole() {
        assert!(matches!(exp_integral_e1(C64::new(-1.0, 0.0)), Err(Error::BranchCut(_))));
        assert!(matches!(exp_integral_e1(C64::new(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn leading_behaviour() {
        let z = 10.0;
        let f = z * f64::exp(z) * exp_integral_e1(C64::new(z, 0.0)).unwrap().value.re;
        assert!(f > 0.0 && f < 1.0);
        let z = 200.0;
        let g = (C64::new(z, 0.0).ln() + z).exp() * exp_integral_e1(C64::new(z, 0.0)).unwrap().value;
        assert!((g.re - 1.0).abs() < 0.01);
    }
}
