//! Stationary phase without neutralizers.
//!
//! Every derivative in the integration-by-parts recursions is taken in jet
//! arithmetic, so user functions enter as [`JetProgram`]s.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::expansion::{Expansion, Prefactor, Scale, Stream};
use crate::jets::{NEAR_SPLIT, two_point_split};
use crate::specfun::gamma;
use crate::{C64, Error, Jet, JetProgram, Result, c64};

/// Phase and amplitude of `∫_a^b e^{iωφ(t)} ψ(t) dt`.
#[derive(Clone, Copy)]
pub struct PhaseAmplitudePair<'a> {
    pub phi: &'a dyn JetProgram,
    pub psi: &'a dyn JetProgram,
    pub a: f64,
    pub b: f64,
}

/// `∫_α^β e^{iωt} (t-α)^{λ-1} (β-t)^{μ-1} f(t) dt`.
#[derive(Clone, Copy)]
pub struct EndpointSingularityProblem<'a> {
    pub f: &'a dyn JetProgram,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: C64,
    pub mu: C64,
}

impl EndpointSingularityProblem<'_> {
    fn validate(&self) -> Result<()> {
        if !(self.lambda.re > 0.0 && self.mu.re > 0.0) {
            return Err(Error::Domain("endpoint exponents need Re lambda > 0 and Re mu > 0".into()));
        }
        if !(self.alpha < self.beta) {
            return Err(Error::Domain("endpoint problem needs alpha < beta".into()));
        }
        Ok(())
    }
}

/// Number of sample points used to look for a sign change of `φ′`.
pub const STATIONARY_GRID: usize = 256;

fn real(t: f64) -> C64 {
    c64(t, 0.0)
}

/// Look for a zero of `φ′` on `[a, b]` by sampling.
pub fn find_stationary_point(phi: &dyn JetProgram, a: f64, b: f64, samples: usize) -> Result<Option<f64>> {
    let dphi = |t: f64| -> Result<f64> { Ok(phi.jet(real(t), 1)?.coeff(1).re) };
    let n = samples.max(2);
    let mut prev = dphi(a)?;
    if prev == 0.0 {
        return Ok(Some(a));
    }
    for i in 1..=n {
        let t = if i == n { b } else { a + (b - a) * i as f64 / n as f64 };
        let d = dphi(t)?;
        if d == 0.0 || d.signum() != prev.signum() {
            return Ok(Some(t));
        }
        prev = d;
    }
    Ok(None)
}

/// Endpoint series `ψ_n(e)/φ′(e)` with `ψ_{n+1} = -(ψ_n/φ′)′`.
fn ibp_coefficients(phi: &dyn JetProgram, psi: &dyn JetProgram, at: f64, n_terms: usize) -> Result<(C64, C64, Vec<C64>)> {
    let order = 2 * n_terms + 4;
    let ph = phi.jet(real(at), order + 1)?;
    let dphi = ph.differentiate()?;
    let mut p = psi.jet(real(at), order)?;
    let mut out = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        out.push(p.value());
        if n + 1 < n_terms {
            let ratio = p.div(&dphi.truncate(p.order()))?;
            p = ratio.differentiate()?.scale(c64(-1.0, 0.0));
        }
    }
    Ok((ph.value(), dphi.value(), out))
}

/// Integration by parts for a phase without stationary points on `[a, b]`:
/// `e^{iωφ(b)}/φ′(b) Σ ψ_n(b)/(iω)^{n+1} - (same at a)`.
pub fn ibp_expand(p: &PhaseAmplitudePair, n_terms: usize) -> Result<Expansion> {
    if !(p.a < p.b) {
        return Err(Error::Domain("ibp_expand needs a < b".into()));
    }
    if let Some(at) = find_stationary_point(p.phi, p.a, p.b, STATIONARY_GRID)? {
        return Err(Error::StationaryPoint { at, a: p.a, b: p.b });
    }
    let (phb, dpb, cb) = ibp_coefficients(p.phi, p.psi, p.b, n_terms)?;
    let (pha, dpa, ca) = ibp_coefficients(p.phi, p.psi, p.a, n_terms)?;
    if phb.im != 0.0 || pha.im != 0.0 {
        return Err(Error::Domain("ibp_expand needs a real phase".into()));
    }
    let scale = Scale::new(c64(0.0, 1.0), c64(1.0, 0.0));
    let streams = vec![
        Stream::new("b", Prefactor::Oscillation { amplitude: dpb.inv(), phase: phb.re }, cb, scale),
        Stream::new("a", Prefactor::Oscillation { amplitude: -dpa.inv(), phase: pha.re }, ca, scale),
    ];
    let mut e = Expansion::new("ibp", streams);
    e.remainder_offset = Some(1.0);
    Ok(e)
}

/// `f_n` coefficients at a far endpoint `e`: returns `C_n(e)` given `f_n(0)`.
fn stationary_endpoint(f: &dyn JetProgram, e: f64, f0: &[C64]) -> Result<Vec<C64>> {
    let n_terms = f0.len();
    let order = 2 * n_terms + 4;
    let t = Jet::variable(real(e), order);
    let mut fj = f.apply(&t)?;
    let mut out = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        let c = fj.add_scalar(-f0[n]).div(&t.truncate(fj.order()))?;
        out.push(c.value());
        if n + 1 < n_terms {
            fj = c.differentiate()?.scale(c64(-1.0, 0.0));
        }
    }
    Ok(out)
}

/// Bleistein's expansion of `∫_a^b e^{iωt²} f(t) dt` with `a < 0 < b`:
///
/// `e^{iωb²} Σ C_n(b)/(2iω)^{n+1} - e^{iωa²} Σ C_n(a)/(2iω)^{n+1}
///  + Φ_{a,b}(ω) Σ f_n(0)/(2iω)^n`,
///
/// with `C_n(t) = (f_n(t) - f_n(0))/t` and `f_{n+1} = -C_n′`. The Fresnel
/// integral is kept whole, so the expansion stays valid as `a` or `b` tends
/// to zero.
pub fn bleistein_stationary(f: &dyn JetProgram, a: f64, b: f64, n_terms: usize) -> Result<Expansion> {
    if !(a < 0.0 && 0.0 < b) {
        return Err(Error::NoStationaryPoint { a, b });
    }
    // two orders per step at the origin plus a margin for evaluating the
    // series at nearby endpoints
    let order = 2 * n_terms + 40;
    let mut fj = f.jet(real(0.0), order)?;
    let mut f0 = Vec::with_capacity(n_terms);
    let mut near: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
    let ends = [a, b];
    for n in 0..n_terms {
        let v = fj.value();
        f0.push(v);
        let c = fj.remove_zero(v);
        for (k, &e) in ends.iter().enumerate() {
            if e.abs() <= NEAR_SPLIT {
                near[k].push(c.eval_at(real(e)));
            }
        }
        if n + 1 < n_terms {
            fj = c.differentiate()?.scale(c64(-1.0, 0.0));
        }
    }
    let mut cs: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
    for (k, &e) in ends.iter().enumerate() {
        cs[k] = if e.abs() <= NEAR_SPLIT { core::mem::take(&mut near[k]) } else { stationary_endpoint(f, e, &f0)? };
    }
    let [ca, cb] = cs;
    let edge = Scale::new(c64(0.0, 2.0), c64(1.0, 0.0));
    let streams = vec![
        Stream::new("b", Prefactor::Oscillation { amplitude: c64(1.0, 0.0), phase: b * b }, cb, edge),
        Stream::new("a", Prefactor::Oscillation { amplitude: c64(-1.0, 0.0), phase: a * a }, ca, edge),
        Stream::new("fresnel", Prefactor::Fresnel { a, b }, f0, Scale::new(c64(0.0, 2.0), c64(0.0, 0.0))),
    ];
    let mut e = Expansion::new("bleistein-stationary", streams);
    e.remainder_offset = Some(0.5);
    Ok(e)
}

/// Erdélyi's expansion: one series from each algebraic endpoint,
///
/// `A_N = Σ Γ(n+λ)/(n! ω^{n+λ}) e^{i(π(n+λ)/2 + αω)} d^n[(β-t)^{μ-1} f]_{t=α}`,
/// `B_N = Σ Γ(n+μ)/(n! ω^{n+μ}) e^{i(π(n-μ)/2 + βω)} d^n[(t-α)^{λ-1} f]_{t=β}`.
pub fn erdelyi_endpoint(p: &EndpointSingularityProblem, n_terms: usize) -> Result<Expansion> {
    p.validate()?;
    let order = n_terms.max(1);
    let (al, be) = (real(p.alpha), real(p.beta));
    let ta = Jet::variable(al, order);
    let ha = &(&Jet::constant(al, be, order) - &ta).powc(p.mu - 1.0)? * &p.f.apply(&ta)?;
    let tb = Jet::variable(be, order);
    let hb = &(&tb - &Jet::constant(be, al, order)).powc(p.lambda - 1.0)? * &p.f.apply(&tb)?;
    let i = c64(0.0, 1.0);
    let phase = |x: C64| (i * x * FRAC_PI_2).exp();
    let ca = (0..n_terms).map(|n| gamma(p.lambda + n as f64) * phase(p.lambda + n as f64) * ha.coeff(n)).collect();
    let cb = (0..n_terms).map(|n| gamma(p.mu + n as f64) * phase(real(n as f64) - p.mu) * hb.coeff(n)).collect();
    let streams = vec![
        Stream::new("alpha", Prefactor::Oscillation { amplitude: c64(1.0, 0.0), phase: p.alpha }, ca, Scale::new(c64(1.0, 0.0), p.lambda)),
        Stream::new("beta", Prefactor::Oscillation { amplitude: c64(1.0, 0.0), phase: p.beta }, cb, Scale::new(c64(1.0, 0.0), p.mu)),
    ];
    let mut e = Expansion::new("erdelyi", streams);
    e.remainder_offset = Some(p.lambda.re.min(p.mu.re));
    Ok(e)
}

/// Coefficients `a_n = f_n(α)` and `b_n = (f_n(β) - f_n(α))/(β-α)` of the
/// endpoint Bleistein expansion.
pub fn bleistein_endpoint_coefficients(p: &EndpointSingularityProblem, n_terms: usize) -> Result<(Vec<C64>, Vec<C64>)> {
    p.validate()?;
    let (al, be) = (real(p.alpha), real(p.beta));
    let near = p.beta - p.alpha <= NEAR_SPLIT;
    // each step costs one order for the split (two in series mode) and one
    // for the derivative; series mode also extrapolates the jets across the
    // interval and needs a generous margin
    let order = if near { 3 * n_terms + 40 } else { 2 * n_terms + 4 };
    let mut fa = p.f.jet(al, order)?;
    let mut fb = p.f.jet(be, order)?;
    let (mut an, mut bn) = (Vec::with_capacity(n_terms), Vec::with_capacity(n_terms));
    for n in 0..n_terms {
        if n + 1 == n_terms {
            an.push(fa.value());
            bn.push((fb.value() - fa.value()) / (be - al));
            break;
        }
        let s = two_point_split(&fa, &fb, al, be)?;
        an.push(s.a0);
        bn.push(s.b0);
        fa = next_f(&s.remainder.0, p)?;
        fb = next_f(&s.remainder.1, p)?;
    }
    Ok((an, bn))
}

/// `-[λ(β-t) - μ(t-α)] g - (t-α)(β-t) g′` at the jet's anchor.
fn next_f(g: &Jet, p: &EndpointSingularityProblem) -> Result<Jet> {
    let order = g.order() - 1;
    let t = Jet::variable(g.anchor(), order);
    let left = t.add_scalar(real(-p.alpha));
    let right = t.scale(c64(-1.0, 0.0)).add_scalar(real(p.beta));
    let g0 = g.truncate(order);
    let lin = &right.scale(p.lambda) - &left.scale(p.mu);
    let f = &(&lin * &g0) + &(&(&left * &right) * &g.differentiate()?);
    Ok(f.scale(c64(-1.0, 0.0)))
}

/// Bleistein's endpoint expansion `Φ Σ a_n/(iω)^n + Ψ Σ b_n/(iω)^n` with the
/// Kummer-function prefactors `Φ`, `Ψ` kept whole. It stays valid as the
/// endpoints coalesce.
pub fn bleistein_endpoint(p: &EndpointSingularityProblem, n_terms: usize) -> Result<Expansion> {
    let (an, bn) = bleistein_endpoint_coefficients(p, n_terms)?;
    let kummer = |shifted| Prefactor::Kummer { alpha: p.alpha, beta: p.beta, lambda: p.lambda, mu: p.mu, shifted };
    let scale = Scale::new(c64(0.0, 1.0), c64(0.0, 0.0));
    let streams = vec![Stream::new("phi", kummer(false), an, scale), Stream::new("psi", kummer(true), bn, scale)];
    let mut e = Expansion::new("bleistein-endpoint", streams);
    e.remainder_offset = Some(p.lambda.re.min(p.mu.re));
    Ok(e)
}

/// The endpoint Bleistein expansion with each Kummer prefactor replaced by its
/// own endpoint series and the result collected by powers of `ω`. Through
/// `n_terms` it has the stream layout of [`erdelyi_endpoint`], so the two can
/// be compared coefficient by coefficient.
pub fn bleistein_endpoint_reexpanded(p: &EndpointSingularityProblem, n_terms: usize) -> Result<Expansion> {
    let (an, bn) = bleistein_endpoint_coefficients(p, n_terms.max(1))?;
    let order = n_terms.max(1);
    let (al, be) = (real(p.alpha), real(p.beta));
    // endpoint factors of the Kummer integrands as jets
    let ta = Jet::variable(al, order);
    let right = (&Jet::constant(al, be, order) - &ta).powc(p.mu - 1.0)?;
    let tb = Jet::variable(be, order);
    let left0 = (&tb - &Jet::constant(be, al, order)).powc(p.lambda - 1.0)?;
    let left1 = (&tb - &Jet::constant(be, al, order)).powc(p.lambda)?;
    let i = c64(0.0, 1.0);
    let phase = |x: C64| (i * x * FRAC_PI_2).exp();
    let mut ca = vec![c64(0.0, 0.0); n_terms];
    let mut cb = vec![c64(0.0, 0.0); n_terms];
    for m in 0..n_terms {
        for n in 0..=m {
            let w = i.powi(-(n as i32));
            let k = m - n;
            let lk = p.lambda + k as f64;
            ca[m] += w * an[n] * gamma(lk) * phase(lk) * right.coeff(k);
            if k >= 1 {
                let l1 = p.lambda + k as f64;
                ca[m] += w * bn[n] * gamma(l1) * phase(l1) * right.coeff(k - 1);
            }
            let mk = p.mu + k as f64;
            let pb = gamma(mk) * phase(real(k as f64) - p.mu);
            cb[m] += w * pb * (an[n] * left0.coeff(k) + bn[n] * left1.coeff(k));
        }
    }
    let streams = vec![
        Stream::new("alpha", Prefactor::Oscillation { amplitude: c64(1.0, 0.0), phase: p.alpha }, ca, Scale::new(c64(1.0, 0.0), p.lambda)),
        Stream::new("beta", Prefactor::Oscillation { amplitude: c64(1.0, 0.0), phase: p.beta }, cb, Scale::new(c64(1.0, 0.0), p.mu)),
    ];
    let mut e = Expansion::new("bleistein-endpoint-reexpanded", streams);
    e.remainder_offset = Some(p.lambda.re.min(p.mu.re));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::fresnel_phi;

    fn one(t: &Jet) -> Result<Jet> {
        Ok(Jet::constant(t.anchor(), c64(1.0, 0.0), t.order()))
    }

    fn ident(t: &Jet) -> Result<Jet> {
        Ok(t.clone())
    }

    fn exp(t: &Jet) -> Result<Jet> {
        Ok(t.exp())
    }

    #[test]
    fn ibp_linear_phase_exact() {
        let p = PhaseAmplitudePair { phi: &ident, psi: &one, a: 0.0, b: 1.0 };
        let e = ibp_expand(&p, 4).unwrap();
        let w = 7.0;
        let r = e.evaluate(real(w)).unwrap();
        let want = (c64(0.0, w).exp() - 1.0) / c64(0.0, w);
        assert!((r.terms[0] - want).norm() < 1e-15);
        assert!(r.terms[1..].iter().all(|t| t.norm() == 0.0));
    }

    #[test]
    fn ibp_rejects_stationary_point() {
        let sq = |t: &Jet| Ok(t * t);
        let p = PhaseAmplitudePair { phi: &sq, psi: &one, a: -1.0, b: 1.0 };
        assert!(matches!(ibp_expand(&p, 2), Err(Error::StationaryPoint { .. })));
    }

    #[test]
    fn stationary_constant_is_fresnel() {
        let e = bleistein_stationary(&one, -1.0, 2.0, 4).unwrap();
        let w = 30.0;
        let v = e.evaluate(real(w)).unwrap().sum();
        let phi = fresnel_phi(-1.0, 2.0, w).unwrap().value;
        assert!((v - phi).norm() < 1e-15);
        for s in &e.streams[..2] {
            assert!(s.coeffs.iter().all(|c| c.norm() == 0.0));
        }
        assert!(e.streams[2].coeffs[1..].iter().all(|c| c.norm() == 0.0));
        assert!(bleistein_stationary(&one, 0.5, 2.0, 2).is_err());
    }

    #[test]
    fn stationary_first_recursion_step() {
        // f = e^t: C_0(b) = (e^b - 1)/b and f_1(0) = -1/2
        let e = bleistein_stationary(&exp, -1.0, 2.0, 3).unwrap();
        let cb = e.streams[0].coeffs[0];
        assert!((cb.re - (2f64.exp() - 1.0) / 2.0).abs() < 1e-14);
        assert!((e.streams[2].coeffs[1].re + 0.5).abs() < 1e-14);
        // near endpoint evaluated from the origin jet agrees with division
        let near = bleistein_stationary(&exp, -1.0, 0.2, 3).unwrap();
        let far = stationary_endpoint(&exp, 0.2, &near.streams[2].coeffs).unwrap();
        for (x, y) in near.streams[0].coeffs.iter().zip(&far) {
            assert!((x - y).norm() < 1e-12 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn stationary_even_symmetry() {
        let cosh = |t: &Jet| Ok(&(t.exp()) + &(t.scale(c64(-1.0, 0.0)).exp()));
        let e = bleistein_stationary(&cosh, -1.5, 1.5, 4).unwrap();
        for (x, y) in e.streams[0].coeffs.iter().zip(&e.streams[1].coeffs) {
            assert!((x + y).norm() < 1e-13 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn erdelyi_reduces_to_ibp() {
        let p = EndpointSingularityProblem { f: &one, alpha: 0.0, beta: 1.0, lambda: real(1.0), mu: real(1.0) };
        let e = erdelyi_endpoint(&p, 3).unwrap();
        let q = PhaseAmplitudePair { phi: &ident, psi: &one, a: 0.0, b: 1.0 };
        let ib = ibp_expand(&q, 3).unwrap();
        let w = real(11.0);
        for n in 0..3 {
            assert!((e.term(n, w).unwrap() - ib.term(n, w).unwrap()).norm() < 1e-15);
        }
    }

    #[test]
    fn endpoint_constant_is_kummer() {
        let p = EndpointSingularityProblem { f: &one, alpha: 0.0, beta: 1.0, lambda: real(0.5), mu: real(0.5) };
        let (an, bn) = bleistein_endpoint_coefficients(&p, 3).unwrap();
        assert_eq!(an[0], real(1.0));
        assert!(bn.iter().all(|b| b.norm() == 0.0));
        assert!(an[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn endpoint_recursion_in_both_modes() {
        let emt = |t: &Jet| Ok(t.scale(c64(-1.0, 0.0)).exp());
        for (al, be) in [(0.0, 2.0), (0.0, 0.1)] {
            let p = EndpointSingularityProblem { f: &emt, alpha: al, beta: be, lambda: real(0.5), mu: real(1.0 / 3.0) };
            let (an, bn) = bleistein_endpoint_coefficients(&p, 3).unwrap();
            // f_1 from the closed form of the first step with g_0 at both ends
            let f = |t: f64| (-t).exp();
            let a0 = f(al);
            let b0 = (f(be) - f(al)) / (be - al);
            assert!((an[0].re - a0).abs() < 1e-14 && (bn[0].re - b0).abs() < 1e-13);
            // g_0(α) = (f′(α) - b0)/(β-α); f_1(α) = -λ(β-α) g_0(α)
            let g_al = (-f(al) - b0) / (be - al);
            let f1_al = -0.5 * (be - al) * g_al;
            assert!((an[1].re - f1_al).abs() < 1e-12, "{} vs {}", an[1].re, f1_al);
            let g_be = (b0 - -f(be)) / (be - al);
            let f1_be = (1.0 / 3.0) * (be - al) * g_be;
            assert!((bn[1].re - (f1_be - f1_al) / (be - al)).abs() < 1e-10);
        }
    }
}
