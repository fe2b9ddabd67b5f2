use asymptotika::oracle::{IntegrandKind, IntegrandSpec, Interval, bessel_j_ref, quad_laplace};
use asymptotika::uniform::{
    PoleProblem, airy_bessel_j, airy_map, debruijn_expand, debruijn_g, pole_split_coefficients, sn_direct, sn_uniform,
    vdw_expand,
};
use asymptotika::specfun::airy_ai;
use asymptotika::{C64, Jet, Result};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn exp(t: &Jet) -> Result<Jet> {
    Ok(t.exp())
}

fn cos(t: &Jet) -> Result<Jet> {
    Ok(t.cos())
}

fn line_breaks(scale: f64) -> Vec<f64> {
    let s = scale.max(1e-6);
    vec![-10.0 * s, -s, 0.0, s, 10.0 * s, -1.0, 1.0]
}

/// The real-line integral plus the residue when the pole has crossed the axis.
fn vdw_oracle(f: fn(f64) -> C64, alpha: C64, omega: f64) -> (C64, f64) {
    let ia = C64::new(0.0, 1.0) * alpha;
    let g = move |t: C64| (-omega * t * t).exp() * f(t.re) / (t - ia) / C64::new(0.0, 2.0 * std::f64::consts::PI);
    let spec = IntegrandSpec::new(IntegrandKind::ComplexLine, &g).with_decay(omega).with_breakpoints(&line_breaks(alpha.norm()));
    let q = quad_laplace(&spec, Interval::line(), 1e-13).unwrap();
    let mut v = q.value;
    if alpha.re < 0.0 {
        let fia = C64::new(-alpha.im, alpha.re).exp();
        v += (omega * alpha * alpha).exp() * fia;
    }
    (v, q.est_error)
}

#[test]
fn vdw_exact_case_matches_quadrature() {
    let one = |t: &Jet| Ok(Jet::constant(t.anchor(), c(1.0), t.order()));
    let p = PoleProblem { f: &one, alpha: c(1.0), omega: 1.0, strip: 2.0 };
    let v = vdw_expand(&p, 3).unwrap().evaluate(c(1.0)).unwrap().sum();
    let (o, est) = vdw_oracle(|_| c(1.0), c(1.0), 1.0);
    assert!((v - o).norm() <= est.max(1e-14), "{} vs {}", (v - o).norm(), est);
    // ½erfc(1) once e^{ωα²} is removed
    assert!((v.re / 1f64.exp() - 0.5 * 0.15729920705028513).abs() < 1e-15);
}

#[test]
fn vdw_matches_oracle_on_both_sides_of_the_axis() {
    let omega = 40.0;
    for alpha in [c(0.3), c(0.05), C64::new(0.1, 0.2), c(-0.05), c(-0.3)] {
        let p = PoleProblem { f: &exp, alpha, omega, strip: f64::INFINITY };
        let v = vdw_expand(&p, 5).unwrap().evaluate(c(omega)).unwrap().sum();
        let (o, _) = vdw_oracle(|t| c(t.exp()), alpha, omega);
        assert!((v - o).norm() <= 1e-7 * o.norm().max(1.0), "alpha={alpha}: {}", (v - o).norm());
    }
}

#[test]
fn vdw_is_continuous_through_the_saddle() {
    let omega = 20.0;
    let value = |a: f64| {
        let p = PoleProblem { f: &exp, alpha: c(a), omega, strip: f64::INFINITY };
        vdw_expand(&p, 4).unwrap().evaluate(c(omega)).unwrap().sum()
    };
    let h = 1e-3;
    let (lo, mid, hi) = (value(-h), value(0.0), value(h));
    let between = |a: f64, m: f64, b: f64| (a.min(b) - 1e-15..=a.max(b) + 1e-15).contains(&m);
    assert!(between(lo.re, mid.re, hi.re) && between(lo.im, mid.im, hi.im));
    // the approximation error does not jump when the pole crosses the axis
    let err = |a: f64| value(a) - vdw_oracle(|t| c(t.exp()), c(a), omega).0;
    assert!((err(h) - err(-h)).norm() <= 1e-5, "{}", (err(h) - err(-h)).norm());
    // and the values themselves close up linearly in the offset
    let gaps: Vec<f64> = (3..=6).map(|k| (value(10f64.powi(-k)) - value(-(10f64.powi(-k)))).norm()).collect();
    for w in gaps.windows(2) {
        assert!((w[1] / w[0] - 0.1).abs() < 1e-3);
    }
}

#[test]
fn vdw_coefficients_converge_at_confluence() {
    for f in [&exp as &dyn asymptotika::JetProgram, &cos] {
        let seq: Vec<Vec<C64>> = (1..=8)
            .map(|k| pole_split_coefficients(f, C64::new(0.0, 10f64.powi(-k)), f64::INFINITY, 6).unwrap())
            .collect();
        let limit = pole_split_coefficients(f, c(0.0), f64::INFINITY, 6).unwrap();
        for w in seq.windows(2) {
            let d0: f64 = w[0].iter().zip(&limit).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let d1: f64 = w[1].iter().zip(&limit).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(d1.is_finite() && d1 <= 0.2 * d0 + 1e-15);
        }
    }
}

#[test]
fn debruijn_coefficients_match_closed_forms() {
    let table = [
        (0.01, [0.4999958333472222, 0.020833263889012897, 0.0010416648065496858]),
        (0.1, [0.49958347219742339, 0.020826390128830478, 0.0010414806754283285]),
        (0.5, [0.48966975243850914, 0.020660495122981729, 0.0010370292621096264]),
        (1.0, [0.45969769413186028, 0.020151152934069859, 0.0010232705988952119]),
    ];
    for (beta, want) in table {
        let g = debruijn_g(&exp, beta, 2).unwrap();
        let poch = [1.0, 0.5, 0.75];
        for k in 0..3 {
            let ck = g[k] * poch[k];
            assert!((ck - c(want[k])).norm() < 1e-12, "beta={beta} k={k}: {ck} vs {}", want[k]);
        }
    }
}

#[test]
fn debruijn_coefficients_have_a_limit() {
    let mut prev = debruijn_g(&exp, 0.1, 3).unwrap();
    for k in 2..=8 {
        let next = debruijn_g(&exp, 10f64.powi(-k), 3).unwrap();
        let d: f64 = next.iter().zip(&prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 10f64.powi(-2 * k + 3));
        prev = next;
    }
    assert!((prev[0] - c(0.5)).norm() < 1e-15);
}

#[test]
fn debruijn_matches_oracle() {
    let omega: f64 = 30.0;
    // β² ∫ e^{-ωt²+t}/(β²+t²) dt at 40 digits
    for (alpha, reference) in [(0.5, 0.3019911419471473574), (1.0, 0.24656046795847415851), (2.0, 0.086341878294677182217)] {
        let e = debruijn_expand(&exp, alpha, omega, 3).unwrap();
        let v = e.evaluate(c(omega)).unwrap().sum();
        assert!((v.re - reference).abs() <= 1e-4 * reference, "alpha={alpha}: {v}");
        let beta = omega.powf(-0.5 * alpha);
        let g = move |t: C64| beta * beta * (-omega * t * t + t).exp() / (beta * beta + t * t);
        let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(omega).with_breakpoints(&line_breaks(beta));
        let q = quad_laplace(&spec, Interval::line(), 1e-13).unwrap();
        assert!((q.value.re - reference).abs() < 1e-12);
    }
    // at α = 1 the erfc term is β cos β π e erfc(1)
    let beta = omega.powf(-0.5);
    let e = debruijn_expand(&exp, 1.0, omega, 3).unwrap();
    let erfc_part = e.streams[0].prefactor.eval(c(omega)).unwrap();
    let want = beta * beta.cos() * std::f64::consts::PI * 1f64.exp() * 0.15729920705028513;
    assert!((erfc_part.re - want).abs() < 1e-14);
}

#[test]
fn airy_map_is_monotone_and_matches_definition() {
    let mut prev = f64::INFINITY;
    for k in 1..=400 {
        let z = k as f64 * 0.01;
        let m = airy_map(z).unwrap();
        assert!(m.zeta < prev, "z={z}");
        prev = m.zeta;
        if z <= 1.0 {
            let r = (1.0 - z * z).sqrt();
            let rhs = ((1.0 + r) / z).ln() - r;
            let lhs = 2.0 / 3.0 * m.zeta.powf(1.5);
            assert!((lhs - rhs).abs() < 1e-12, "z={z}");
        }
    }
}

#[test]
fn bessel_reference_is_relative_below_the_turning_point() {
    // mpmath values
    for (nu, x, want) in [(100.0, 60.0, 4.7832744078781004e-15), (50.0, 30.0, 2.0581656631564178e-8), (10.0, 8.0, 0.060767026774251156)] {
        let o = bessel_j_ref(nu, x).unwrap();
        assert!((o.value.re - want).abs() <= 1e-12 * want, "nu={nu}");
        assert!(o.est_error <= 1e-12 * want);
    }
}

fn bessel_rel_error(nu: f64, z: f64) -> f64 {
    let v = airy_bessel_j(nu, z, 2).unwrap().sum().re;
    let o = bessel_j_ref(nu, nu * z).unwrap().value.re;
    ((v - o) / o).abs()
}

#[test]
fn airy_bessel_is_uniform_in_z() {
    let grid = [0.6, 0.9, 1.0, 1.1, 1.5];
    let worst50 = grid.iter().map(|&z| bessel_rel_error(50.0, z)).fold(0.0, f64::max);
    let worst100 = grid.iter().map(|&z| bessel_rel_error(100.0, z)).fold(0.0, f64::max);
    assert!(worst50 <= 5e-3, "{worst50}");
    assert!(worst100 * 3.0 <= worst50, "{worst50} {worst100}");
}

#[test]
fn airy_bessel_leading_term_at_turning_point() {
    let nu: f64 = 50.0;
    let v = airy_bessel_j(nu, 1.0, 1).unwrap().sum().re;
    let want = 2f64.powf(1.0 / 3.0) * airy_ai(0.0).value.re / nu.powf(1.0 / 3.0);
    assert!((v - want).abs() < 1e-15);
    let o = bessel_j_ref(nu, nu).unwrap().value.re;
    assert!(((v - o) / o).abs() <= 10.0 / (nu * nu));
}

#[test]
fn airy_bessel_zeros_interleave_with_oracle() {
    let nu = 30.0;
    let zs: Vec<f64> = (0..=600).map(|k| 0.8 + k as f64 * 0.005).collect();
    let crossings = |vals: &[f64]| -> Vec<f64> {
        vals.windows(2).zip(zs.windows(2)).filter(|(v, _)| v[0] * v[1] < 0.0).map(|(_, z)| 0.5 * (z[0] + z[1])).collect()
    };
    let approx: Vec<f64> = zs.iter().map(|&z| airy_bessel_j(nu, z, 1).unwrap().sum().re).collect();
    let exact: Vec<f64> = zs.iter().map(|&z| bessel_j_ref(nu, nu * z).unwrap().value.re).collect();
    let (a, e) = (crossings(&approx), crossings(&exact));
    assert!(e.len() >= 5);
    assert_eq!(a.len(), e.len());
    for i in 0..a.len() {
        let lo = if i == 0 { 0.0 } else { e[i - 1] };
        let hi = if i + 1 < e.len() { e[i + 1] } else { f64::INFINITY };
        assert!(lo < a[i] && a[i] < hi);
    }
}

#[test]
fn sn_identity_and_expansion() {
    let (n, z) = (50u64, 0.9f64);
    let direct = sn_direct(n, z);
    let g = move |s: C64| (-(n as f64) * s).exp() / (s.exp() - z);
    let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(n as f64);
    let q = quad_laplace(&spec, Interval::half_line(0.0), 1e-15).unwrap();
    let rep = -(1.0 - z).ln() - z.powi(n as i32 + 1) * q.value.re;
    assert!((rep - direct).abs() < 1e-10, "{rep} vs {direct}");
    let v = sn_uniform(n, z, 8).unwrap().value().re;
    assert!((v - direct).abs() < 1e-10, "{v} vs {direct}");
}

#[test]
fn sn_is_uniform_up_to_z_one() {
    for z in [0.5, 0.9, 0.99, 0.999, 1.0] {
        for n in [20u64, 100, 1000] {
            let v = sn_uniform(n, z, 6).unwrap().value().re;
            let d = sn_direct(n, z);
            assert!((v - d).abs() <= 1e-8 * d.abs(), "z={z} n={n}: {v} vs {d}");
        }
    }
}

#[test]
fn sn_limits() {
    let r3 = sn_uniform(1000, 1.0, 6).unwrap().value().re / 1000f64.ln();
    let r6 = sn_uniform(1_000_000, 1.0, 6).unwrap().value().re / 1e6f64.ln();
    assert!(r6 > 1.0 && r6 < r3 && (r6 - 1.0) < 0.05, "{r3} {r6}");
    let d = sn_uniform(1_000_000, 1.0, 6).unwrap().value().re - 1e6f64.ln();
    assert!((d - 0.5772156649015329).abs() < 1e-6);
    let z: f64 = 0.7;
    let lim = -(1.0 - z).ln();
    let errs: Vec<f64> = [20u64, 40, 80].iter().map(|&n| (sn_uniform(n, z, 6).unwrap().value().re - lim).abs()).collect();
    assert!(errs[1] < errs[0] && errs[2] < errs[1] && errs[2] < 1e-12);
}
