//! Structured asymptotic expansions and their evaluation reports.
//!
//! An [`Expansion`] is a list of [`Stream`]s. Each stream is a prefactor (often
//! a special function of the large parameter `x`) times a coefficient sequence
//! times a power scale `(base·x)^{-(n+offset)}`. Term `n` of the expansion is
//! the sum over streams of their `n`-th contributions.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::specfun::{self, SpecialValue};
use crate::{C64, Result, c64};

/// Scale of term `n`: `(base·x)^{-(n+offset)}` on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scale {
    pub base: C64,
    pub offset: C64,
}

impl Scale {
    pub fn new(base: C64, offset: C64) -> Self {
        Scale { base, offset }
    }

    /// `x^{-(n+offset)}`.
    pub fn power(offset: f64) -> Self {
        Scale { base: c64(1.0, 0.0), offset: c64(offset, 0.0) }
    }

    pub fn eval(&self, n: usize, x: C64) -> C64 {
        let e = -(self.offset + n as f64);
        if e == c64(0.0, 0.0) {
            return c64(1.0, 0.0);
        }
        (e * (self.base * x).ln()).exp()
    }
}

/// Prefactor of a stream, evaluated at the large parameter `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Prefactor {
    Constant(C64),
    /// `amplitude · e^{i x phase}`
    Oscillation { amplitude: C64, phase: f64 },
    /// `amplitude · e^{rate · x}`
    Exponential { amplitude: C64, rate: C64 },
    /// `∫_a^b e^{i x t²} dt`
    Fresnel { a: f64, b: f64 },
    /// The Kummer-function integral
    /// `∫_α^β (t-α)^{λ-1+s} (β-t)^{μ-1} e^{ixt} dt` with `s = 1` when `shifted`.
    Kummer { alpha: f64, beta: f64, lambda: C64, mu: C64, shifted: bool },
    /// `amplitude · e^{x·arg²} erfc(arg·√x)`
    ScaledErfc { amplitude: C64, arg: C64 },
    /// `amplitude · Ai(ζ x^{2/3})`, or `Ai′` when `derivative`.
    Airy { amplitude: f64, zeta: f64, derivative: bool },
    /// `-ln(1-z) - E₁(-x ln z)`, combined stably near `z = 1`.
    LogMinusE1 { z: f64 },
}

impl Prefactor {
    pub fn eval(&self, x: C64) -> Result<C64> {
        Ok(self.eval_with_error(x)?.value)
    }

    /// Value with an error estimate inherited from the special functions.
    pub fn eval_with_error(&self, x: C64) -> Result<SpecialValue> {
        use specfun::Method::Series;
        let exact = |v: C64| SpecialValue { value: v, method: Series, est_error: 4.0 * f64::EPSILON * v.norm() };
        match *self {
            Prefactor::Constant(c) => Ok(exact(c)),
            Prefactor::Oscillation { amplitude, phase } => Ok(exact(amplitude * (c64(0.0, phase) * x).exp())),
            Prefactor::Exponential { amplitude, rate } => Ok(exact(amplitude * (rate * x).exp())),
            Prefactor::Fresnel { a, b } => specfun::fresnel_phi(a, b, x.re),
            Prefactor::Kummer { alpha, beta, lambda, mu, shifted } => {
                kummer_prefactor(alpha, beta, lambda, mu, shifted, x.re)
            }
            Prefactor::ScaledErfc { amplitude, arg } => {
                let r = specfun::erfcx(arg * x.sqrt())?;
                Ok(SpecialValue { value: amplitude * r.value, method: r.method, est_error: amplitude.norm() * r.est_error })
            }
            Prefactor::Airy { amplitude, zeta, derivative } => {
                let arg = zeta * x.re.powf(2.0 / 3.0);
                let r = if derivative { specfun::airy_ai_prime(arg) } else { specfun::airy_ai(arg) };
                Ok(SpecialValue {
                    value: r.value * amplitude,
                    method: r.method,
                    est_error: r.est_error * amplitude.abs(),
                })
            }
            Prefactor::LogMinusE1 { z } => log_minus_e1(z, x.re),
        }
    }
}

/// `L^{λ+μ-1+s} e^{ixα} Γ(λ+s)Γ(μ)/Γ(λ+μ+s) · ₁F₁(λ+s; λ+μ+s; ixL)`.
fn kummer_prefactor(alpha: f64, beta: f64, lambda: C64, mu: C64, shifted: bool, x: f64) -> Result<SpecialValue> {
    let s = if shifted { 1.0 } else { 0.0 };
    let len = beta - alpha;
    let a = lambda + s;
    let b = lambda + mu + s;
    let m = specfun::kummer_1f1(a, b, c64(0.0, x * len))?;
    let beta_fn = (specfun::ln_gamma(a) + specfun::ln_gamma(mu) - specfun::ln_gamma(b)).exp();
    let pre = c64(len, 0.0).powc(b - 1.0) * c64(0.0, x * alpha).exp() * beta_fn;
    Ok(SpecialValue {
        value: pre * m.value,
        method: m.method,
        est_error: pre.norm() * m.est_error + 16.0 * f64::EPSILON * (pre * m.value).norm(),
    })
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `-ln(1-z) - E₁(n c)` with `c = -ln z`. Near `z = 1` both pieces are large;
/// their sum is formed from the series of `E₁` so the logarithms cancel
/// analytically.
fn log_minus_e1(z: f64, n: f64) -> Result<SpecialValue> {
    use specfun::Method;
    let c = -z.ln();
    if z == 1.0 || n * c < 0.5 {
        // -ln(1-z) - E1(w) = γ + ln n + ln(c/(1-z)) + Σ_{k≥1} (-w)^k/(k·k!) with w = n c
        let ratio = if (1.0 - z).abs() < 1e-4 {
            let u = 1.0 - z;
            // -ln(1-u)/u = 1 + u/2 + u²/3 + …
            1.0 + u / 2.0 + u * u / 3.0 + u * u * u / 4.0
        } else {
            c / (1.0 - z)
        };
        let w = n * c;
        let mut t = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            t *= -w / k as f64;
            let term = t / k as f64;
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        let v = EULER_GAMMA + n.ln() + ratio.ln() + sum;
        return Ok(SpecialValue { value: c64(v, 0.0), method: Method::Series, est_error: 8.0 * f64::EPSILON * (1.0 + v.abs()) });
    }
    let e1 = specfun::exp_integral_e1(c64(n * c, 0.0))?;
    let l = -(1.0 - z).ln();
    let v = l - e1.value.re;
    Ok(SpecialValue { value: c64(v, 0.0), method: e1.method, est_error: e1.est_error + 4.0 * f64::EPSILON * l.abs() })
}

/// One prefactor with its coefficient sequence and scale rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Stream {
    pub label: String,
    pub prefactor: Prefactor,
    pub coeffs: Vec<C64>,
    pub scale: Scale,
}

impl Stream {
    pub fn new(label: &str, prefactor: Prefactor, coeffs: Vec<C64>, scale: Scale) -> Self {
        Stream { label: label.into(), prefactor, coeffs, scale }
    }
}

/// How stream contributions combine into a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Sum,
    /// The streams describe one of two conjugate contributions; the term is
    /// twice the real part of their sum.
    TwiceRealPart,
}

/// Closed interval of `ph x` in which the expansion is known to hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSector {
    pub lo: f64,
    pub hi: f64,
}

impl PhaseSector {
    pub fn contains(&self, x: C64) -> bool {
        let ph = x.arg();
        // compare modulo 2π, sectors may extend past ±π
        [ph - 2.0 * PI, ph, ph + 2.0 * PI].iter().any(|&p| p >= self.lo && p <= self.hi)
    }
}

/// A structured asymptotic expansion in a large parameter `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub method: &'static str,
    pub streams: Vec<Stream>,
    pub combine: Combine,
    pub validity: Option<PhaseSector>,
    /// Truncating after `N` terms leaves a remainder of order
    /// `x^{-(N + remainder_offset)}`.
    pub remainder_offset: Option<f64>,
}

impl Expansion {
    pub fn new(method: &'static str, streams: Vec<Stream>) -> Self {
        Expansion { method, streams, combine: Combine::Sum, validity: None, remainder_offset: None }
    }

    pub fn n_terms(&self) -> usize {
        self.streams.iter().map(|s| s.coeffs.len()).max().unwrap_or(0)
    }

    /// Exponent of the algebraic remainder after `n` terms, if there is one.
    pub fn predicted_order(&self, n: usize) -> Option<f64> {
        self.remainder_offset.map(|o| -(n as f64 + o))
    }

    /// Spread of the oscillation frequencies `e^{ixp}` carried by the
    /// prefactors. Remainders of expansions with several decisive points beat
    /// with period `2π/spread`.
    pub fn phase_spread(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut see = |p: f64| {
            lo = lo.min(p);
            hi = hi.max(p);
        };
        for s in &self.streams {
            match s.prefactor {
                Prefactor::Oscillation { phase, .. } => see(phase),
                Prefactor::Kummer { alpha, beta, .. } => {
                    see(alpha);
                    see(beta);
                }
                Prefactor::Fresnel { a, b } => {
                    see(0.0);
                    see(a * a);
                    see(b * b);
                }
                _ => see(0.0),
            }
        }
        if hi > lo { hi - lo } else { 0.0 }
    }

    fn prefactors(&self, x: C64) -> Result<Vec<C64>> {
        self.streams.iter().map(|s| s.prefactor.eval(x)).collect()
    }

    fn combine(&self, v: C64) -> C64 {
        match self.combine {
            Combine::Sum => v,
            Combine::TwiceRealPart => c64(2.0 * v.re, 0.0),
        }
    }

    /// Contribution of each stream to term `n`, before combination.
    pub fn term_parts(&self, n: usize, x: C64) -> Result<Vec<C64>> {
        let pre = self.prefactors(x)?;
        Ok(self.streams.iter().zip(pre).map(|(s, p)| stream_term(s, p, n, x)).collect())
    }

    pub fn term(&self, n: usize, x: C64) -> Result<C64> {
        let parts = self.term_parts(n, x)?;
        Ok(self.combine(parts.into_iter().sum()))
    }

    /// Evaluate all terms at `x`.
    pub fn evaluate(&self, x: C64) -> Result<EvalReport> {
        self.evaluate_terms(x, self.n_terms())
    }

    /// Evaluate the first `n` terms at `x`.
    pub fn evaluate_terms(&self, x: C64, n: usize) -> Result<EvalReport> {
        let n = n.min(self.n_terms());
        let pre = self.prefactors(x)?;
        let terms = (0..n)
            .map(|k| {
                let v: C64 = self.streams.iter().zip(&pre).map(|(s, &p)| stream_term(s, p, k, x)).sum();
                self.combine(v)
            })
            .collect();
        let mut report = EvalReport::from_terms(terms);
        report.outside_sector = self.validity.is_some_and(|s| !s.contains(x));
        Ok(report)
    }
}

fn stream_term(s: &Stream, pre: C64, n: usize, x: C64) -> C64 {
    match s.coeffs.get(n) {
        Some(&c) if c != c64(0.0, 0.0) => pre * c * s.scale.eval(n, x),
        _ => c64(0.0, 0.0),
    }
}

/// Partial sums of an expansion with a stopping diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub terms: Vec<C64>,
    pub partial_sums: Vec<C64>,
    pub term_mags: Vec<f64>,
    /// Number of terms included in [`EvalReport::value`]: through the smallest term.
    pub truncation_index: usize,
    pub smallest_term_index: usize,
    /// Terms grow again after the smallest one.
    pub terms_grow: bool,
    /// The parameter lies outside the recorded validity sector.
    pub outside_sector: bool,
}

impl EvalReport {
    pub fn from_terms(terms: Vec<C64>) -> Self {
        let term_mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc = c64(0.0, 0.0);
        for &t in &terms {
            acc += t;
            partial_sums.push(acc);
        }
        let mut smallest = 0;
        for (i, &m) in term_mags.iter().enumerate() {
            if m < term_mags[smallest] {
                smallest = i;
            }
        }
        let terms_grow = term_mags.iter().skip(smallest + 1).any(|&m| m > term_mags[smallest]);
        let truncation_index = if terms.is_empty() { 0 } else { smallest + 1 };
        EvalReport {
            terms,
            partial_sums,
            term_mags,
            truncation_index,
            smallest_term_index: smallest,
            terms_grow,
            outside_sector: false,
        }
    }

    /// Sum through the smallest term.
    pub fn value(&self) -> C64 {
        match self.truncation_index {
            0 => c64(0.0, 0.0),
            k => self.partial_sums[k - 1],
        }
    }

    /// Sum of every computed term.
    pub fn sum(&self) -> C64 {
        self.partial_sums.last().copied().unwrap_or(c64(0.0, 0.0))
    }

    /// Magnitude of the last computed term, the usual remainder proxy.
    pub fn last_term_mag(&self) -> f64 {
        self.term_mags.last().copied().unwrap_or(0.0)
    }
}
