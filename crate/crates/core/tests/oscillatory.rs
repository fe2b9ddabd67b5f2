use asymptotika::oracle::{IntegrandKind, IntegrandSpec, Interval, Phase, quad_oscillatory};
use asymptotika::oscillatory::{
    EndpointSingularityProblem, PhaseAmplitudePair, bleistein_endpoint, bleistein_endpoint_reexpanded, bleistein_stationary,
    erdelyi_endpoint, ibp_expand,
};
use asymptotika::specfun::{gamma, kummer_1f1};
use asymptotika::{C64, Jet, Result};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn ident(t: &Jet) -> Result<Jet> {
    Ok(t.clone())
}

fn one(t: &Jet) -> Result<Jet> {
    Ok(Jet::constant(t.anchor(), c(1.0), t.order()))
}

fn exp(t: &Jet) -> Result<Jet> {
    Ok(t.exp())
}

fn exp_minus(t: &Jet) -> Result<Jet> {
    Ok(t.scale(c(-1.0)).exp())
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Largest error over one beat period starting at `w`.
fn envelope(spread: f64, w: f64, err: impl Fn(f64) -> f64) -> f64 {
    if spread == 0.0 {
        return err(w);
    }
    let period = 2.0 * std::f64::consts::PI / spread;
    (0..8).map(|j| err(w + period * j as f64 / 8.0)).fold(0.0, f64::max)
}

fn grid() -> Vec<f64> {
    (0..6).map(|k| 20.0 * 2f64.powi(k)).collect()
}

fn endpoint_oracle(f: fn(f64) -> f64, al: f64, be: f64, lambda: f64, mu: f64, w: f64) -> C64 {
    let amp = move |t: C64| c(f(t.re));
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp).with_exponents(c(lambda - 1.0), c(mu - 1.0));
    quad_oscillatory(&spec, Interval::new(al, be), w, 1e-14).unwrap().value
}

fn stationary_oracle(f: fn(f64) -> f64, a: f64, b: f64, w: f64) -> C64 {
    let amp = move |t: C64| c(f(t.re));
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp).with_phase(Phase::Quadratic);
    quad_oscillatory(&spec, Interval::new(a, b), w, 1e-14).unwrap().value
}

#[test]
fn ibp_matches_oracle() {
    let p = PhaseAmplitudePair { phi: &ident, psi: &exp_minus, a: 0.0, b: 1.0 };
    let e = ibp_expand(&p, 4).unwrap();
    let v = e.evaluate(c(50.0)).unwrap().sum();
    let o = endpoint_oracle(|t| (-t).exp(), 0.0, 1.0, 1.0, 1.0, 50.0);
    assert!((v - o).norm() <= 1e-6, "{}", (v - o).norm());
}

#[test]
fn ibp_slope_quadratic_phase() {
    let sq = |t: &Jet| Ok(t * t);
    let p = PhaseAmplitudePair { phi: &sq, psi: &one, a: 1.0, b: 2.0 };
    for n in [2, 3] {
        let e = ibp_expand(&p, n).unwrap();
        let ws = grid();
        let errs: Vec<f64> = ws
            .iter()
            .map(|&w| (e.evaluate(c(w)).unwrap().sum() - stationary_oracle(|_| 1.0, 1.0, 2.0, w)).norm())
            .collect();
        let s = slope(&ws, &errs);
        let want = e.predicted_order(n).unwrap();
        assert!((s - want).abs() <= 0.2, "N={n}: slope {s} vs {want}");
    }
}

#[test]
fn stationary_matches_oracle() {
    let e = bleistein_stationary(&exp, -1.0, 2.0, 3).unwrap();
    let v = e.evaluate(c(40.0)).unwrap().sum();
    let o = stationary_oracle(f64::exp, -1.0, 2.0, 40.0);
    assert!((v - o).norm() <= 1e-5, "{}", (v - o).norm());
}

#[test]
fn stationary_coalescence() {
    let w = 40.0;
    let err = |b: f64| {
        let e = bleistein_stationary(&exp, -1.0, b, 3).unwrap();
        (e.evaluate(c(w)).unwrap().sum() - stationary_oracle(f64::exp, -1.0, b, w)).norm()
    };
    let base = err(0.5);
    for k in 1..=4 {
        let b = 10f64.powi(-k);
        let e = err(b);
        assert!(e <= 2.0 * base, "b={b}: {e} vs {base}");
    }
}

#[test]
fn erdelyi_kummer_identity() {
    let p = EndpointSingularityProblem { f: &one, alpha: 0.0, beta: 1.0, lambda: c(0.5), mu: c(0.5) };
    let e = erdelyi_endpoint(&p, 3).unwrap();
    let w = 60.0;
    let v = e.evaluate(c(w)).unwrap().sum();
    let m = kummer_1f1(c(0.5), c(1.0), C64::new(0.0, w)).unwrap().value;
    let exact = m * gamma(c(0.5)) * gamma(c(0.5)) / gamma(c(1.0));
    assert!((v - exact).norm() <= 1e-4 * exact.norm());
}

#[test]
fn erdelyi_mirror_symmetry() {
    // t -> α+β-t swaps the endpoints and λ with μ; for real data the mirrored
    // integral is the conjugate up to the phase e^{iω(α+β)}
    let f1 = |t: &Jet| Ok(t.scale(c(-1.0)).exp());
    let f2 = |t: &Jet| Ok(t.add_scalar(c(-2.0)).exp());
    let p = EndpointSingularityProblem { f: &f1, alpha: 0.0, beta: 2.0, lambda: c(0.5), mu: c(1.0 / 3.0) };
    let q = EndpointSingularityProblem { f: &f2, alpha: 0.0, beta: 2.0, lambda: c(1.0 / 3.0), mu: c(0.5) };
    for w in [30.0, 75.0] {
        let vp = erdelyi_endpoint(&p, 4).unwrap().evaluate(c(w)).unwrap().sum();
        let vq = erdelyi_endpoint(&q, 4).unwrap().evaluate(c(w)).unwrap().sum();
        let back = C64::new(0.0, 2.0 * w).exp() * vq.conj();
        assert!((vp - back).norm() < 1e-12 * vp.norm());
        let o = endpoint_oracle(|t| (-t).exp(), 0.0, 2.0, 0.5, 1.0 / 3.0, w);
        assert!((vp - o).norm() < 1e-4);
    }
}

#[test]
fn erdelyi_slope() {
    let p = EndpointSingularityProblem { f: &exp_minus, alpha: 0.0, beta: 2.0, lambda: c(0.5), mu: c(1.0 / 3.0) };
    for n in [2, 3] {
        let e = erdelyi_endpoint(&p, n).unwrap();
        let ws = grid();
        let errs: Vec<f64> = ws
            .iter()
            .map(|&w| {
                envelope(e.phase_spread(), w, |w| {
                    (e.evaluate(c(w)).unwrap().sum() - endpoint_oracle(|t| (-t).exp(), 0.0, 2.0, 0.5, 1.0 / 3.0, w)).norm()
                })
            })
            .collect();
        let s = slope(&ws, &errs);
        let want = e.predicted_order(n).unwrap();
        assert!((s - want).abs() <= 0.2, "N={n}: slope {s} vs {want}");
    }
}

#[test]
fn endpoint_bleistein_matches_oracle_and_coalesces() {
    let w = 50.0;
    let err = |be: f64| {
        let p = EndpointSingularityProblem { f: &exp_minus, alpha: 0.0, beta: be, lambda: c(0.5), mu: c(1.0 / 3.0) };
        let e = bleistein_endpoint(&p, 3).unwrap();
        (e.evaluate(c(w)).unwrap().sum() - endpoint_oracle(|t| (-t).exp(), 0.0, be, 0.5, 1.0 / 3.0, w)).norm()
    };
    let base = err(2.0);
    assert!(base < 1e-5, "{base}");
    for k in 1..=4 {
        let be = 10f64.powi(-k);
        let e = err(be);
        assert!(e <= 2.0 * base, "beta={be}: {e} vs {base}");
    }
}

#[test]
fn endpoint_expansions_agree_termwise() {
    for be in [2.0, 1.0, 0.1] {
        let p = EndpointSingularityProblem { f: &exp_minus, alpha: 0.0, beta: be, lambda: c(0.5), mu: c(1.0 / 3.0) };
        let e = erdelyi_endpoint(&p, 3).unwrap();
        let b = bleistein_endpoint_reexpanded(&p, 3).unwrap();
        for (se, sb) in e.streams.iter().zip(&b.streams) {
            for (x, y) in se.coeffs.iter().zip(&sb.coeffs) {
                assert!((x - y).norm() <= 1e-8 * x.norm(), "beta={be}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn stationary_bleistein_slope() {
    for n in [2, 3] {
        let e = bleistein_stationary(&exp_minus, -1.0, 2.0, n).unwrap();
        let ws = grid();
        let errs: Vec<f64> = ws
            .iter()
            .map(|&w| {
                envelope(e.phase_spread(), w, |w| {
                    (e.evaluate(c(w)).unwrap().sum() - stationary_oracle(|t| (-t).exp(), -1.0, 2.0, w)).norm()
                })
            })
            .collect();
        let s = slope(&ws, &errs);
        let want = e.predicted_order(n).unwrap();
        assert!((s - want).abs() <= 0.2, "N={n}: slope {s} vs {want}");
    }
}

#[test]
fn endpoint_bleistein_slope() {
    let p = EndpointSingularityProblem { f: &exp_minus, alpha: 0.0, beta: 2.0, lambda: c(0.5), mu: c(1.0 / 3.0) };
    for n in [2, 3] {
        let e = bleistein_endpoint(&p, n).unwrap();
        let ws = grid();
        let errs: Vec<f64> = ws
            .iter()
            .map(|&w| {
                envelope(e.phase_spread(), w, |w| {
                    (e.evaluate(c(w)).unwrap().sum() - endpoint_oracle(|t| (-t).exp(), 0.0, 2.0, 0.5, 1.0 / 3.0, w)).norm()
                })
            })
            .collect();
        let s = slope(&ws, &errs);
        let want = e.predicted_order(n).unwrap();
        assert!((s - want).abs() <= 0.2, "N={n}: slope {s} vs {want}");
    }
}
