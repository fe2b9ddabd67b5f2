//! Uniform expansions with erfc and Airy leading terms.
//!
//! A pole approaching a saddle point is split off as a complementary error
//! function; two coalescing saddles of the Bessel integral are mapped onto the
//! cubic of the Airy integral; a pole approaching the endpoint of a Laplace
//! integral is split off as an exponential integral.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::expansion::{EvalReport, Expansion, Prefactor, Scale, Stream};
use crate::jets::{Jet, JetProgram, two_point_split};
use crate::specfun::pochhammer;
use crate::{C64, Error, Result, c64};

fn zero() -> C64 {
    c64(0.0, 0.0)
}

fn one() -> C64 {
    c64(1.0, 0.0)
}

/// `(1/2πi) ∫ e^{-ωt²} f(t)/(t - iα) dt` over the real line, with `f`
/// analytic in the strip `|Im t| ≤ strip`.
pub struct PoleProblem<'a> {
    pub f: &'a dyn JetProgram,
    pub alpha: C64,
    pub omega: f64,
    pub strip: f64,
}

impl PoleProblem<'_> {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.norm() < self.strip) {
            return Err(Error::Domain("pole i*alpha must lie inside the strip of analyticity".into()));
        }
        if !(self.omega > 0.0) {
            return Err(Error::Domain("omega must be positive".into()));
        }
        Ok(())
    }
}

/// Maclaurin coefficients `c_0..=c_k` of `(f(t) - f(p))/(t - p)`, where `f` is
/// analytic in the disk `|t| < radius` and `|p| < radius`.
///
/// The series `c_m = Σ_{j>m} f_j p^{j-1-m}` is used while it converges
/// quickly; it has no cancellation as `p → 0`. Far from the origin the
/// division by `t - p` is used instead.
pub fn pole_split_coefficients(f: &dyn JetProgram, p: C64, radius: f64, k: usize) -> Result<Vec<C64>> {
    let ratio = p.norm() / radius;
    let extra = if ratio == 0.0 { 60.0 } else { (40.0 / -ratio.ln()).max(60.0) };
    if extra <= 400.0 {
        let order = k + 1 + extra.ceil() as usize;
        let fj = f.jet(zero(), order)?;
        let c = fj.coeffs();
        return Ok((0..=k).map(|m| c[m + 1..].iter().rev().fold(zero(), |acc, &fj| acc * p + fj)).collect());
    }
    let fp = f.eval(p)?;
    let num = f.jet(zero(), k)?.add_scalar(-fp);
    let den = Jet::variable(zero(), k).add_scalar(-p);
    Ok(num.div(&den)?.coeffs().to_vec())
}

/// Pole near the saddle point:
/// `F ~ ½f(iα)e^{ωα²}erfc(α√ω) + (2i√(πω))^{-1} Σ (1/2)_n c_{2n}(α) ω^{-n}`.
///
/// The expansion continues analytically through `α = 0` into `Re α < 0`,
/// where the real-line integral must be corrected by the residue
/// `e^{ωα²}f(iα)`.
pub fn vdw_expand(p: &PoleProblem, n_terms: usize) -> Result<Expansion> {
    p.validate()?;
    let ia = c64(0.0, 1.0) * p.alpha;
    let fp = p.f.eval(ia)?;
    let n = n_terms.max(1);
    let c = pole_split_coefficients(p.f, ia, p.strip, 2 * n - 2)?;
    let erfc = Stream::new("erfc", Prefactor::ScaledErfc { amplitude: fp * 0.5, arg: p.alpha }, vec![one()], Scale::power(0.0));
    let coeffs = (0..n).map(|k| pochhammer(c64(0.5, 0.0), k) * c[2 * k]).collect();
    let pre = Prefactor::Constant(one() / c64(0.0, 2.0 * PI.sqrt()));
    let laplace = Stream::new("laplace", pre, coeffs, Scale::power(0.5));
    let mut e = Expansion::new("vdw", vec![erfc, laplace]);
    e.remainder_offset = Some(0.5);
    Ok(e)
}

/// Even Maclaurin coefficients `g_0, g_2, …, g_{2k}` of
/// `g = (f - a₀ - b₀t)/(β² + t²)`, where `f = a₀ + b₀t` at `t = ±iβ`.
pub fn debruijn_g(f: &dyn JetProgram, beta: f64, k: usize) -> Result<Vec<C64>> {
    let b2 = c64(-beta * beta, 0.0);
    if beta <= 0.5 {
        // g_i = Σ_{j ≥ 0} f_{i+2+2j} (-β²)^j
        let order = 2 * k + 2 + 2 * 60;
        let fj = f.jet(zero(), order)?;
        let c = fj.coeffs();
        return Ok((0..=k)
            .map(|m| {
                let i = 2 * m;
                c[i + 2..].iter().step_by(2).rev().fold(zero(), |acc, &v| acc * b2 + v)
            })
            .collect());
    }
    let ib = c64(0.0, beta);
    let (fp, fm) = (f.eval(ib)?, f.eval(-ib)?);
    let a0 = (fp + fm) * 0.5;
    let b0 = (fp - fm) / (ib * 2.0);
    let order = 2 * k;
    let t = Jet::variable(zero(), order);
    let num = &f.jet(zero(), order)? - &(&t * b0).add_scalar(a0);
    let den = (&t * &t).add_scalar(-b2);
    let g = num.div(&den)?;
    Ok((0..=k).map(|m| g.coeff(2 * m)).collect())
}

/// `β² ∫ e^{-ωt²} f(t)/(β² + t²) dt` with `β = ω^{-alpha_exp/2}`:
/// `a₀βπ e^{ωβ²}erfc(β√ω) + β²√(π/ω) Σ c_k(β) ω^{-k}`, `c_k = g_{2k}(1/2)_k`.
pub fn debruijn_expand(f: &dyn JetProgram, alpha_exp: f64, omega: f64, n_terms: usize) -> Result<Expansion> {
    if !(alpha_exp > 0.0 && omega > 0.0) {
        return Err(Error::Domain("debruijn_expand needs positive alpha and omega".into()));
    }
    let beta = omega.powf(-0.5 * alpha_exp);
    let ib = c64(0.0, beta);
    let a0 = (f.eval(ib)? + f.eval(-ib)?) * 0.5;
    let n = n_terms.max(1);
    let g = debruijn_g(f, beta, n - 1)?;
    let coeffs = g.iter().enumerate().map(|(k, &gk)| gk * pochhammer(c64(0.5, 0.0), k)).collect();
    let erfc = Stream::new(
        "erfc",
        Prefactor::ScaledErfc { amplitude: a0 * beta * PI, arg: c64(beta, 0.0) },
        vec![one()],
        Scale::power(0.0),
    );
    let laplace = Stream::new("laplace", Prefactor::Constant(c64(beta * beta * PI.sqrt(), 0.0)), coeffs, Scale::power(0.5));
    let mut e = Expansion::new("debruijn", vec![erfc, laplace]);
    // β² moves with ω, so the remainder is β² O(ω^{-N-1/2})
    e.remainder_offset = Some(0.5 + alpha_exp);
    Ok(e)
}

/// The map `z ↦ ζ` that sends the saddle points `s = ±arccosh(1/z)` of
/// `z sinh s - s` to the saddle points `t = ±√ζ` of `t³/3 - ζt`.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryMap {
    pub z: f64,
    pub zeta: f64,
    /// `g(±√ζ) = (4ζ/(1-z²))^{1/4}`.
    pub g_at_saddle: f64,
    /// Coefficients of `z = Σ z_k η^k` with `η = 2^{-1/3}ζ`.
    pub eta_series: Vec<f64>,
}

/// Below this distance from `z = 1` the closed forms cancel and the map is
/// taken from its power series.
pub const AIRY_SERIES_RADIUS: f64 = 0.05;
const ETA_TERMS: usize = 8;

/// `Q(u)` with `(2/3)ζ^{3/2} = u^{3/2}Q(u)`, `u = 1 - z`, as a jet at 0.
///
/// `∫_z^1 √(1-x²)/x dx = ∫_0^u √v · √(2-v)/(1-v) dv`.
fn q_jet(order: usize) -> Result<Jet> {
    let v = Jet::variable(zero(), order);
    let r = (-&v).add_scalar(c64(2.0, 0.0)).sqrt()?.div(&(-&v).add_scalar(one()))?;
    let coeffs = r.coeffs().iter().enumerate().map(|(k, &q)| q / (k as f64 + 1.5)).collect();
    Ok(Jet::new(zero(), coeffs))
}

/// `(1.5·Q)^{2/3}`, so that `ζ = u·w(u)`.
fn zeta_ratio_jet(order: usize) -> Result<Jet> {
    (&q_jet(order)? * 1.5).powc(c64(2.0 / 3.0, 0.0))
}

fn eta_series() -> Result<Vec<f64>> {
    let w = zeta_ratio_jet(ETA_TERMS)?;
    let zeta_u = &Jet::variable(zero(), ETA_TERMS) * &w;
    let eta_u = &zeta_u * 2f64.powf(-1.0 / 3.0);
    let u_eta = eta_u.reversion()?;
    Ok(u_eta.coeffs().iter().enumerate().map(|(k, c)| if k == 0 { 1.0 - c.re } else { -c.re }).collect())
}

pub fn airy_map(z: f64) -> Result<AiryMap> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain("airy_map needs z > 0".into()));
    }
    let u = 1.0 - z;
    let (zeta, g) = if u.abs() <= AIRY_SERIES_RADIUS {
        let w = zeta_ratio_jet(30)?.eval_at(c64(u, 0.0)).re;
        (u * w, (4.0 * w / (2.0 - u)).powf(0.25))
    } else if z < 1.0 {
        let r = (1.0 - z * z).sqrt();
        let zeta = (1.5 * (((1.0 + r) / z).ln() - r)).powf(2.0 / 3.0);
        (zeta, (4.0 * zeta / (1.0 - z * z)).powf(0.25))
    } else {
        let r = (z * z - 1.0).sqrt();
        let zeta = -(1.5 * (r - (1.0 / z).acos())).powf(2.0 / 3.0);
        (zeta, (4.0 * zeta / (1.0 - z * z)).powf(0.25))
    };
    Ok(AiryMap { z, zeta, g_at_saddle: g, eta_series: eta_series()? })
}

/// `1/m!` for `m = 0..=n`.
fn inverse_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = 1.0;
    out.push(v);
    for m in 1..=n {
        v /= m as f64;
        out.push(v);
    }
    out
}

/// Jet of `g = ds/dt` at the saddle `t₀ = sign·√ζ` (`z ≠ 1`).
///
/// Near each saddle both phases are quadratic. Writing
/// `φ(s₀+σ) - φ(s₀) = P(σ)²` and `w(t₀+τ) - w(t₀) = T(τ)²` with
/// `P = σ√(F/σ²)` and `T = τ√(t₀ + τ/3)` gives `σ = P⁻¹∘T`.
fn saddle_g_jet(z: f64, zeta: f64, sign: f64, order: usize) -> Result<Jet> {
    let k = order + 1;
    let (s0, t0) = if z < 1.0 {
        (c64(sign * (1.0 / z).acosh(), 0.0), c64(sign * zeta.sqrt(), 0.0))
    } else {
        (c64(0.0, sign * (1.0 / z).acos()), c64(0.0, sign * (-zeta).sqrt()))
    };
    let (sh, ch) = (s0.sinh(), s0.cosh());
    let inv = inverse_factorials(k + 2);
    // (φ(s₀+σ) - φ(s₀))/σ²; the linear term vanishes at the saddle
    let f2: Vec<C64> = (0..k).map(|j| (if j % 2 == 0 { sh } else { ch }) * (z * inv[j + 2])).collect();
    let root = Jet::new(zero(), f2).sqrt()?;
    let mut p = vec![zero()];
    p.extend_from_slice(root.coeffs());
    let p = Jet::new(zero(), p);
    let mut w = vec![t0, c64(1.0 / 3.0, 0.0)];
    w.resize(k, zero());
    let wr = Jet::new(zero(), w).sqrt()?;
    let mut t = vec![zero()];
    t.extend_from_slice(wr.coeffs());
    let t = Jet::new(zero(), t);
    let sigma = p.reversion()?.compose(&t)?;
    let mut g = sigma.differentiate()?.coeffs().to_vec();
    if g[0].re < 0.0 {
        g.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(Jet::new(t0, g))
}

/// Jet of `g` at `t = 0` when `z = 1`: both phases are cubic there, and
/// `σ√[3]{3(sinh σ - σ)/σ³} = τ`.
fn confluent_g_jet(order: usize) -> Result<Jet> {
    let k = order + 1;
    let inv = inverse_factorials(k + 3);
    let f3: Vec<C64> = (0..k).map(|j| if j % 2 == 0 { c64(3.0 * inv[j + 3], 0.0) } else { zero() }).collect();
    let root = Jet::new(zero(), f3).powc(c64(1.0 / 3.0, 0.0))?;
    let mut p = vec![zero()];
    p.extend_from_slice(root.coeffs());
    let sigma = Jet::new(zero(), p).reversion()?;
    sigma.differentiate()
}

/// Order of the `g` jets used for `B₀`; the near-coalescence splits consume
/// two orders each.
const AIRY_JET_ORDER: usize = 8;

/// The first two Bleistein steps for the cubic phase: `(a₀, b₀, a₁, b₁)` with
/// `g = a₀ + b₀t + (t²-ζ)h` and `-h′ = a₁ + b₁t + (t²-ζ)h₁`.
pub fn airy_bleistein_coefficients(map: &AiryMap) -> Result<[C64; 4]> {
    if map.zeta == 0.0 {
        let g = confluent_g_jet(AIRY_JET_ORDER)?;
        let c = g.coeffs();
        // h = Σ g_{k+2} t^k and -h′ = -Σ (k+1) g_{k+3} t^k
        return Ok([c[0], c[1], -c[3], -c[4] * 2.0]);
    }
    let g_plus = saddle_g_jet(map.z, map.zeta, 1.0, AIRY_JET_ORDER)?;
    let g_minus = saddle_g_jet(map.z, map.zeta, -1.0, AIRY_JET_ORDER)?;
    let (tp, tm) = (g_plus.anchor(), g_minus.anchor());
    // g = a + b(t - t₊) + (t - t₊)(t₋ - t) G, so h = -G
    let s0 = two_point_split(&g_plus, &g_minus, tp, tm)?;
    let (gp, gm) = s0.remainder;
    let s1 = two_point_split(&gp.differentiate()?, &gm.differentiate()?, tp, tm)?;
    Ok([s0.a0 - s0.b0 * tp, s0.b0, s1.a0 - s1.b0 * tp, s1.b0])
}

fn split_b0(map: &AiryMap) -> Result<f64> {
    let [_, _, _, b1] = airy_bleistein_coefficients(map)?;
    Ok(-b1.re / map.g_at_saddle)
}

/// Inside this distance from `z = 1` the saddle jets are ill-conditioned and
/// `B₀` is interpolated in `u = 1 - z` from split values further out.
pub const AIRY_B0_INTERPOLATION: f64 = 0.03;
const B0_NODES: usize = 12;
const B0_HALF_WIDTH: f64 = 0.16;

/// `B₀(ζ)` of `J_ν(νz) ~ g(√ζ)[Ai(ν^{2/3}ζ)ν^{-1/3}A(ν) + Ai′(ν^{2/3}ζ)ν^{-5/3}B(ν)]`.
pub fn airy_b0(map: &AiryMap) -> Result<f64> {
    let u = 1.0 - map.z;
    if u.abs() >= AIRY_B0_INTERPOLATION {
        return split_b0(map);
    }
    // barycentric interpolation on Chebyshev points of the first kind
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..B0_NODES {
        let theta = PI * (2 * j + 1) as f64 / (2 * B0_NODES) as f64;
        let x = B0_HALF_WIDTH * theta.cos();
        let w = if j % 2 == 0 { theta.sin() } else { -theta.sin() };
        let v = split_b0(&airy_map(1.0 - x)?)?;
        if u == x {
            return Ok(v);
        }
        num += w / (u - x) * v;
        den += w / (u - x);
    }
    Ok(num / den)
}

/// `B₀` at `z = 1` from the cubic-phase jet, independent of the interpolation.
pub fn airy_b0_confluent() -> Result<f64> {
    let map = airy_map(1.0)?;
    let [_, _, _, b1] = airy_bleistein_coefficients(&map)?;
    Ok(-b1.re / map.g_at_saddle)
}

/// The Airy-type expansion of `J_ν(νz)` in `ν` with `A₀ = 1` and, for two
/// terms, `B₀`.
pub fn airy_bessel_expand(z: f64, n_terms: usize) -> Result<Expansion> {
    if !(1..=2).contains(&n_terms) {
        return Err(Error::Domain("airy_bessel supports 1 or 2 terms".into()));
    }
    let map = airy_map(z)?;
    let g = map.g_at_saddle;
    let ai = Stream::new("ai", Prefactor::Airy { amplitude: g, zeta: map.zeta, derivative: false }, vec![one()], Scale::power(1.0 / 3.0));
    let mut streams = vec![ai];
    if n_terms == 2 {
        let b0 = airy_b0(&map)?;
        let pre = Prefactor::Airy { amplitude: g, zeta: map.zeta, derivative: true };
        streams.push(Stream::new("ai_prime", pre, vec![zero(), c64(b0, 0.0)], Scale::power(2.0 / 3.0)));
    }
    Ok(Expansion::new("airy-bessel", streams))
}

/// Smallest order accepted by [`airy_bessel_j`].
pub const AIRY_MIN_ORDER: f64 = 5.0;

pub fn airy_bessel_j(nu: f64, z: f64, n_terms: usize) -> Result<EvalReport> {
    if !(nu >= AIRY_MIN_ORDER) {
        return Err(Error::Domain(alloc::format!("airy_bessel_j needs nu >= {AIRY_MIN_ORDER}")));
    }
    airy_bessel_expand(z, n_terms)?.evaluate(c64(nu, 0.0))
}

/// Taylor coefficients of `q(u) = 1/(e^u - 1) - 1/u` at `u = c ≥ 0`.
fn sn_q_jet(c: f64, order: usize) -> Result<Jet> {
    if c <= 1.0 {
        // q is analytic in |u| < 2π; expand at 0 and move to c
        let k = order + 60;
        let inv = inverse_factorials(k + 2);
        let e: Vec<C64> = (0..=k + 1).map(|j| c64(inv[j + 1], 0.0)).collect();
        let r = Jet::new(zero(), e).recip()?;
        let q = Jet::new(zero(), r.coeffs()[1..].to_vec());
        return Ok(q.recenter(c64(c, 0.0)).truncate(order));
    }
    let u = Jet::variable(c64(c, 0.0), order);
    let a = u.exp().add_scalar(-one()).recip()?;
    Ok(&a - &u.recip()?)
}

/// `S_n(z) = Σ_{k=1}^n z^k/k` for `0 < z ≤ 1`:
/// `-ln(1-z) - E₁(-n ln z) - z^n Σ q_k(-ln z) k!/n^{k+1}`.
///
/// The pole of `1/(e^s - z)` at `s = ln z` is removed into the `E₁` term,
/// which also carries the `ln n` growth at `z = 1`.
pub fn sn_expand(z: f64, n_terms: usize) -> Result<Expansion> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain("S_n needs 0 < z <= 1".into()));
    }
    let n = n_terms.max(1);
    let c = -z.ln();
    let q = sn_q_jet(c, n - 1)?;
    let mut fact = 1.0;
    let coeffs = (0..n)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            q.coeff(k) * fact
        })
        .collect();
    let log = Stream::new("log_e1", Prefactor::LogMinusE1 { z }, vec![one()], Scale::power(0.0));
    let watson = Stream::new("watson", Prefactor::Exponential { amplitude: -one(), rate: c64(z.ln(), 0.0) }, coeffs, Scale::power(1.0));
    let mut e = Expansion::new("sn", vec![log, watson]);
    e.remainder_offset = Some(1.0);
    Ok(e)
}

/// Smallest `n` accepted by [`sn_uniform`].
pub const SN_MIN_N: u64 = 10;

pub fn sn_uniform(n: u64, z: f64, n_terms: usize) -> Result<EvalReport> {
    if n < SN_MIN_N {
        return Err(Error::Domain(alloc::format!("sn_uniform needs n >= {SN_MIN_N}")));
    }
    sn_expand(z, n_terms)?.evaluate(c64(n as f64, 0.0))
}

/// `Σ_{k=1}^n z^k/k` by direct summation.
pub fn sn_direct(n: u64, z: f64) -> f64 {
    let mut s = crate::quadrature::CompensatedSum::new();
    let mut p = 1.0;
    for k in 1..=n {
        p *= z;
        s.add(c64(p / k as f64, 0.0));
    }
    s.total().re
}
