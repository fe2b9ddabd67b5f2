//! Watson's lemma, Laplace's method and their worked instances.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::expansion::{Combine, Expansion, PhaseSector, Prefactor, Scale, Stream};
use crate::specfun::{gamma, pochhammer};
use crate::{C64, Error, Jet, Result, c64};

fn need_order(op: &'static str, f: &Jet, needed: usize) -> Result<()> {
    if f.order() < needed {
        return Err(Error::OrderExhausted { op, order: f.order(), needed });
    }
    Ok(())
}

/// Watson's lemma for `∫_0^∞ t^{λ-1} f(t) e^{-zt} dt` with `f` given by its
/// Maclaurin jet. Terms are `a_n Γ(n+λ) z^{-(n+λ)}`.
///
/// `analyticity` is the sector `α < ph t < β` in which `f` is analytic and of
/// exponential growth; it fixes the recorded validity sector of `ph z`.
pub fn watson_expand(f: &Jet, lambda: C64, n_terms: usize, analyticity: Option<(f64, f64)>) -> Result<Expansion> {
    if !(lambda.re > 0.0) {
        return Err(Error::Domain("watson_expand needs Re lambda > 0".into()));
    }
    if f.anchor() != c64(0.0, 0.0) {
        return Err(Error::Domain("watson_expand needs a jet anchored at 0".into()));
    }
    need_order("watson_expand", f, n_terms.saturating_sub(1))?;
    let coeffs = (0..n_terms).map(|n| f.coeff(n) * gamma(lambda + n as f64)).collect();
    let stream = Stream::new("watson", Prefactor::Constant(c64(1.0, 0.0)), coeffs, Scale::new(c64(1.0, 0.0), lambda));
    let mut e = Expansion::new("watson", vec![stream]);
    e.validity = analyticity.map(|(a, b)| PhaseSector { lo: -b - FRAC_PI_2, hi: -a + FRAC_PI_2 });
    e.remainder_offset = Some(lambda.re);
    Ok(e)
}

/// `z e^z E₁(z) ~ Σ (-1)^n n!/z^n`, valid for `|ph z| ≤ 3π/2 - δ`.
pub fn expint_expand(n_terms: usize) -> Result<Expansion> {
    let t = Jet::variable(c64(0.0, 0.0), n_terms.max(1));
    let f = t.add_scalar(c64(1.0, 0.0)).recip()?;
    let mut e = watson_expand(&f, c64(1.0, 0.0), n_terms, Some((-PI, PI)))?;
    // multiplying by z lowers every power by one
    e.streams[0].scale = Scale::power(0.0);
    e.method = "expint";
    e.remainder_offset = Some(0.0);
    Ok(e)
}

/// `c_n(ν) = (4ν²-1)(4ν²-3²)⋯(4ν²-(2n-1)²)`.
pub fn kv_coefficients(nu: C64, n: usize) -> C64 {
    let m = nu * nu * 4.0;
    (1..=n).map(|k| m - ((2 * k - 1) * (2 * k - 1)) as f64).fold(c64(1.0, 0.0), |acc, v| acc * v)
}

/// `K_ν(z) ~ √(π/(2z)) e^{-z} Σ c_n(ν)/(n! 8^n z^n)`, obtained from Watson's
/// lemma applied to `(1+t)^{ν-1/2}` with `λ = ν + 1/2` and variable `2z`.
pub fn kv_expand(nu: C64, n_terms: usize) -> Result<Expansion> {
    let nu = if nu.re < 0.0 { -nu } else { nu };
    let lambda = nu + 0.5;
    let t = Jet::variable(c64(0.0, 0.0), n_terms.max(1));
    let f = t.add_scalar(c64(1.0, 0.0)).powc(nu - 0.5)?;
    let w = watson_expand(&f, lambda, n_terms, Some((-PI, PI)))?;
    let g = gamma(lambda);
    let coeffs = w.streams[0].coeffs.iter().map(|&c| c / g).collect();
    let stream = Stream::new(
        "kv",
        Prefactor::Exponential { amplitude: c64(PI.sqrt(), 0.0), rate: c64(-1.0, 0.0) },
        coeffs,
        Scale::new(c64(2.0, 0.0), c64(0.5, 0.0)),
    );
    let mut e = Expansion::new("kv", vec![stream]);
    e.validity = Some(PhaseSector { lo: -1.5 * PI, hi: 1.5 * PI });
    e.remainder_offset = Some(0.5);
    Ok(e)
}

/// Laplace's method for `∫_{-∞}^{∞} e^{-zt²} f(t) dt`:
/// `√(π/z) Σ (1/2)_k c_{2k} z^{-k}`.
///
/// `analyticity` is the sector `α < ph(±t) < β` of the domain of `f`.
pub fn laplace_expand(f: &Jet, n_terms: usize, analyticity: Option<(f64, f64)>) -> Result<Expansion> {
    if f.anchor() != c64(0.0, 0.0) {
        return Err(Error::Domain("laplace_expand needs a jet anchored at 0".into()));
    }
    need_order("laplace_expand", f, 2 * n_terms.saturating_sub(1))?;
    let half = c64(0.5, 0.0);
    let coeffs = (0..n_terms).map(|k| pochhammer(half, k) * f.coeff(2 * k) * PI.sqrt()).collect();
    let stream = Stream::new("laplace", Prefactor::Constant(c64(1.0, 0.0)), coeffs, Scale::power(0.5));
    let mut e = Expansion::new("laplace", vec![stream]);
    e.validity = analyticity.map(|(a, b)| PhaseSector { lo: -2.0 * b - FRAC_PI_2, hi: FRAC_PI_2 - 2.0 * a });
    e.remainder_offset = Some(0.5);
    Ok(e)
}

/// Jet at `s = 0` of
/// `f⁺(s) = √( s/(e^s-1) · (1-e^{-2iθ})/(e^s-e^{-2iθ}) )`.
pub fn legendre_fplus(theta: f64, order: usize) -> Result<Jet> {
    let s = Jet::variable(c64(0.0, 0.0), order + 1);
    let e = s.exp();
    let w = c64(0.0, -2.0 * theta).exp();
    let ratio = e.add_scalar(c64(-1.0, 0.0)).remove_zero(c64(0.0, 0.0)).truncate(order).recip()?;
    let e = e.truncate(order);
    let frac = Jet::constant(e.anchor(), c64(1.0, 0.0) - w, order).div(&e.add_scalar(-w))?;
    (&ratio * &frac).sqrt()
}

/// Large-`n` expansion of `P_n(cos θ)` for `θ` in `[θ₀, π/2]`.
///
/// The stream is the contribution of the singularity at `e^{iθ}`; the
/// conjugate singularity doubles its real part.
pub fn legendre_expand(theta: f64, n_terms: usize) -> Result<Expansion> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::Domain("legendre_expand needs 0 < theta <= pi/2".into()));
    }
    let fp = legendre_fplus(theta, n_terms.max(1))?;
    let w = watson_expand(&fp, c64(0.5, 0.0), n_terms, None)?;
    let amplitude = c64(0.0, -0.5 * theta + FRAC_PI_4).exp() / (PI * (2.0 * theta.sin()).sqrt());
    let stream = Stream::new(
        "legendre+",
        Prefactor::Oscillation { amplitude, phase: -theta },
        w.streams[0].coeffs.clone(),
        Scale::power(0.5),
    );
    let mut e = Expansion::new("legendre", vec![stream]);
    e.combine = Combine::TwiceRealPart;
    e.remainder_offset = Some(0.5);
    Ok(e)
}

/// Coefficients `a_n` of the Watson series of `f` in one call; a convenience
/// for callers building their own scales.
pub fn maclaurin(f: &Jet, n: usize) -> Vec<C64> {
    (0..n).map(|k| f.coeff(k)).collect()
}
