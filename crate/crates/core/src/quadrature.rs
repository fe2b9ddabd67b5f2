//! Low-level quadrature rules shared by the special functions and the oracles.
//!
//! Every rule here hands the integrand exact distances to the endpoints, so
//! algebraic endpoint singularities can be evaluated without cancellation.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::{C64, Error, Result};

/// Raw result of a quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutput {
    pub value: C64,
    pub est_error: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

/// Neumaier compensated summation for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: C64,
    comp: C64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: C64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn total(&self) -> C64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// One 21-point Gauss–Kronrod panel on `[a, b]`.
///
/// The integrand receives `(x, x - a, b - x)`. Returns the Kronrod value, a
/// QUADPACK-style error estimate and the integral of `|f|`.
pub fn gk21<F>(f: &mut F, a: f64, b: f64) -> (C64, f64, f64)
where
    F: FnMut(f64, f64, f64) -> C64,
{
    let hw = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    let fc = f(c, hw, hw);
    let mut resk = fc * WGK[10];
    let mut resg = C64::new(0.0, 0.0);
    let mut resabs = fc.norm() * WGK[10];
    let mut fv1 = [C64::new(0.0, 0.0); 10];
    let mut fv2 = [C64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = hw * XGK[j];
        let f1 = f(c - dx, hw - dx, hw + dx);
        let f2 = f(c + dx, hw + dx, hw - dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = (fc - mean).norm() * WGK[10];
    for j in 0..10 {
        resasc += ((fv1[j] - mean).norm() + (fv2[j] - mean).norm()) * WGK[j];
    }
    let hw_abs = hw.abs();
    resasc *= hw_abs;
    resabs *= hw_abs;
    let mut err = ((resk - resg) * hw).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (resk * hw, err, resabs)
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: C64,
    err: f64,
    resabs: f64,
}

/// Adaptive bisection with 21-point Gauss–Kronrod panels.
///
/// `breaks` are interior points that start as panel boundaries. The final sum
/// runs over panels in left-to-right order with compensated accumulation, so
/// the result is reproducible for a given budget.
pub fn adaptive_gk<F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadOutput>
where
    F: FnMut(f64, f64, f64) -> C64,
{
    // gk21 reports distances to the panel ends; the integrand wants the
    // distances to the ends of [a, b]
    let mut f = move |x: f64, dl: f64, dr: f64, pa: f64, pb: f64| f(x, (pa - a) + dl, (b - pb) + dr);
    let mut edges = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    edges.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);
    let mut panels: Vec<Panel> = Vec::new();
    let mut evaluations = 0;
    for w in edges.windows(2) {
        let (v, e, r) = gk21(&mut |x, l, r| f(x, l, r, w[0], w[1]), w[0], w[1]);
        evaluations += 21;
        panels.push(Panel { a: w[0], b: w[1], value: v, err: e, resabs: r });
    }
    let mut subdivisions = 0;
    loop {
        let mut total = CompensatedSum::new();
        let mut err = 0.0;
        let mut absolute = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total.add(p.value);
            err += p.err;
            absolute += p.resabs;
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let value = total.total();
        // below 100ε·∫|f| the estimate is roundoff, not discretisation
        let target = abs_tol.max(rel_tol * value.norm()).max(100.0 * f64::EPSILON * absolute);
        if err <= target || !err.is_finite() {
            if !value.re.is_finite() || !value.im.is_finite() || !err.is_finite() {
                return Err(Error::NoConvergence { est_error: f64::INFINITY, evaluations, subdivisions });
            }
            panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(core::cmp::Ordering::Equal));
            let mut total = CompensatedSum::new();
            for p in &panels {
                total.add(p.value);
            }
            return Ok(QuadOutput { value: total.total(), est_error: err, evaluations, subdivisions });
        }
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if panels.len() >= max_panels || mid <= p.a || mid >= p.b {
            return Err(Error::NoConvergence { est_error: err, evaluations, subdivisions });
        }
        let (v1, e1, r1) = gk21(&mut |x, l, r| f(x, l, r, p.a, mid), p.a, mid);
        let (v2, e2, r2) = gk21(&mut |x, l, r| f(x, l, r, mid, p.b), mid, p.b);
        evaluations += 42;
        subdivisions += 1;
        panels[worst] = Panel { a: p.a, b: mid, value: v1, err: e1, resabs: r1 };
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2, resabs: r2 });
    }
}

/// Domains handled by the double-exponential rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeDomain {
    /// Tanh-sinh on a finite interval.
    Finite(f64, f64),
    /// Exp-sinh on `[0, ∞)`; the integrand receives the distance from 0.
    HalfLine,
    /// Sinh-sinh on the whole real line.
    Line,
}

const DE_MAX_LEVEL: usize = 12;

/// Double-exponential quadrature (tanh-sinh, exp-sinh or sinh-sinh).
///
/// The integrand receives `(x, distance to left end, distance to right end)`,
/// with infinite distances for infinite ends. Levels halve the step until two
/// successive sums agree to the requested tolerance.
pub fn double_exponential<F>(mut f: F, domain: DeDomain, abs_tol: f64, rel_tol: f64) -> Result<QuadOutput>
where
    F: FnMut(f64, f64, f64) -> C64,
{
    let mut node = |t: f64| -> Option<C64> {
        let u = FRAC_PI_2 * t.sinh();
        let du = FRAC_PI_2 * t.cosh();
        match domain {
            DeDomain::Finite(a, b) => {
                let hw = 0.5 * (b - a);
                // 1 - tanh u and 1 + tanh u without cancellation
                let e = (-2.0 * u.abs()).exp();
                let small = 2.0 * e / (1.0 + e);
                let big = 2.0 / (1.0 + e);
                let (dl, dr) = if u >= 0.0 { (hw * big, hw * small) } else { (hw * small, hw * big) };
                if dl == 0.0 || dr == 0.0 {
                    return None;
                }
                let x = if u >= 0.0 { b - dr } else { a + dl };
                let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
                let w = hw * du * sech2;
                Some(f(x, dl, dr) * w)
            }
            DeDomain::HalfLine => {
                let x = u.exp();
                if x == 0.0 || !x.is_finite() {
                    return None;
                }
                Some(f(x, x, f64::INFINITY) * (x * du))
            }
            DeDomain::Line => {
                let x = u.sinh();
                if !x.is_finite() {
                    return None;
                }
                Some(f(x, f64::INFINITY, f64::INFINITY) * (u.cosh() * du))
            }
        }
    };

    let tmax = 6.5;
    let mut raw = CompensatedSum::new();
    let mut abs_raw = 0.0;
    let mut evaluations = 0;
    let mut scan = |level: usize, raw: &mut CompensatedSum, abs_raw: &mut f64, evaluations: &mut usize| {
        let h = 0.5f64.powi(level as i32);
        let (start, stride) = if level == 0 { (0usize, 1usize) } else { (1, 2) };
        if level == 0 {
            if let Some(v) = node(0.0) {
                let v = finite_or_zero(v);
                raw.add(v);
                *abs_raw += v.norm();
            }
            *evaluations += 1;
        }
        for sign in [1.0, -1.0] {
            let mut tiny_run = 0;
            let mut k = if level == 0 { 1 } else { start };
            loop {
                let t = sign * k as f64 * h;
                if t.abs() > tmax {
                    break;
                }
                *evaluations += 1;
                let Some(v) = node(t) else { break };
                if !(v.re.is_finite() && v.im.is_finite()) {
                    break;
                }
                raw.add(v);
                *abs_raw += v.norm();
                let scale = raw.total().norm().max(*abs_raw * 1e-3);
                if v.norm() <= 1e-18 * scale && t.abs() > 1.0 {
                    tiny_run += 1;
                    if tiny_run >= 4 {
                        break;
                    }
                } else {
                    tiny_run = 0;
                }
                k += stride;
            }
        }
    };

    scan(0, &mut raw, &mut abs_raw, &mut evaluations);
    let mut prev = raw.total();
    for level in 1..=DE_MAX_LEVEL {
        scan(level, &mut raw, &mut abs_raw, &mut evaluations);
        let h = 0.5f64.powi(level as i32);
        let cur = raw.total() * h;
        let diff = (cur - prev).norm();
        let roundoff = 10.0 * f64::EPSILON * abs_raw * h;
        let est = diff + roundoff;
        prev = cur;
        if level >= 3 && est <= abs_tol.max(rel_tol * cur.norm()) {
            return Ok(QuadOutput { value: cur, est_error: est, evaluations, subdivisions: level });
        }
        if level == DE_MAX_LEVEL {
            return Err(Error::NoConvergence { est_error: est, evaluations, subdivisions: level });
        }
    }
    unreachable!()
}

fn finite_or_zero(v: C64) -> C64 {
    if v.re.is_finite() && v.im.is_finite() {
        v
    } else {
        C64::new(0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gk_polynomial_exact() {
        let (v, e, _) = gk21(&mut |x: f64, _, _| C64::new(x.powi(5) - 3.0 * x, 0.0), 0.0, 2.0);
        assert_relative_eq!(v.re, 64.0 / 6.0 - 6.0, epsilon = 1e-13);
        assert!(e < 1e-12);
    }

    #[test]
    fn adaptive_handles_sqrt_singularity_with_exact_distance() {
        let out = adaptive_gk(|_, dl, _| C64::new(dl.powf(-0.5), 0.0), 0.0, 1.0, &[], 1e-13, 0.0, 2000).unwrap();
        assert_relative_eq!(out.value.re, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let out = double_exponential(
            |_, dl, dr| C64::new(dl.powf(-0.5) * dr.powf(-1.0 / 3.0), 0.0),
            DeDomain::Finite(0.0, 1.0),
            1e-14,
            1e-14,
        )
        .unwrap();
        // B(1/2, 2/3)
        assert_relative_eq!(out.value.re, 2.5871095592297905, epsilon = 1e-12);
    }

    #[test]
    fn exp_sinh_and_sinh_sinh() {
        let half = double_exponential(|x, _, _| C64::new((-x).exp(), 0.0), DeDomain::HalfLine, 1e-14, 1e-14).unwrap();
        assert_relative_eq!(half.value.re, 1.0, epsilon = 1e-13);
        let line =
            double_exponential(|x, _, _| C64::new(1.0 / (1.0 + x * x), 0.0), DeDomain::Line, 1e-13, 1e-13).unwrap();
        assert_relative_eq!(line.value.re, core::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(C64::new(1e16, 0.0));
        s.add(C64::new(1.0, 0.0));
        s.add(C64::new(-1e16, 0.0));
        assert_eq!(s.total().re, 1.0);
    }
}
