use asymptotika::oracle::{
    IntegrandKind, IntegrandSpec, Interval, Phase, bessel_j_contour, bessel_j_series, quad_laplace, quad_oscillatory,
};
use asymptotika::specfun::{exp_integral_e1, fresnel_phi};
use asymptotika::{C64, Error};
use std::f64::consts::PI;

fn lorentz(t: C64) -> C64 {
    (t * t + 1.0).inv()
}

#[test]
fn gaussian_over_the_line() {
    let g = |t: C64| (-4.0 * t * t).exp();
    let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(4.0);
    let q = quad_laplace(&spec, Interval::line(), 1e-14).unwrap();
    assert!((q.value.re - (PI / 4.0).sqrt()).abs() < 1e-14);
    assert!(q.est_error > 0.0);
}

#[test]
fn laplace_matches_special_function() {
    let z = 10.0;
    let g = move |t: C64| (-z * t).exp() / (t + 1.0);
    let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(z);
    let q = quad_laplace(&spec, Interval::half_line(0.0), 1e-15).unwrap();
    let e1 = exp_integral_e1(C64::new(z, 0.0)).unwrap().value.re * z.exp();
    assert!((q.value.re - e1).abs() < 1e-14 * e1);
}

#[test]
fn tolerance_halving_is_consistent() {
    let z = 3.0;
    let g = move |t: C64| (-z * t).exp() * t.sqrt() / (t + 1.0);
    let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(z);
    for tol in [1e-6, 1e-9, 1e-12] {
        let a = quad_laplace(&spec, Interval::half_line(0.0), tol).unwrap();
        let b = quad_laplace(&spec, Interval::half_line(0.0), tol / 2.0).unwrap();
        assert!((a.value - b.value).norm() <= a.est_error, "tol={tol}");
    }
}

#[test]
fn fourier_transform_of_lorentzian() {
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryHalfLine, &lorentz)
        .analytic()
        .with_singularities(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
    for w in [1.0, 2.0, 3.0, 4.0, 5.5, 8.0] {
        let q = quad_oscillatory(&spec, Interval::line(), w, 1e-13).unwrap();
        let exact = PI * (-w as f64).exp();
        assert!((q.value - exact).norm() <= 1e-9 * exact, "w={w}");
    }
}

#[test]
fn oscillatory_matches_fresnel() {
    let one = |_: C64| C64::new(1.0, 0.0);
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &one).with_phase(Phase::Quadratic);
    for (a, b, w) in [(-1.0, 2.0, 40.0), (0.0, 1.0, 7.0), (0.3, 0.9, 100.0)] {
        let q = quad_oscillatory(&spec, Interval::new(a, b), w, 1e-13).unwrap();
        let f = fresnel_phi(a, b, w).unwrap().value;
        assert!((q.value - f).norm() < 1e-10, "{a} {b} {w}");
    }
}

#[test]
fn oscillatory_is_additive() {
    let amp = |t: C64| (-t).exp();
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp);
    let w = 37.0;
    let whole = quad_oscillatory(&spec, Interval::new(0.0, 2.0), w, 1e-13).unwrap();
    let left = quad_oscillatory(&spec, Interval::new(0.0, 0.7), w, 1e-13).unwrap();
    let right = quad_oscillatory(&spec, Interval::new(0.7, 2.0), w, 1e-13).unwrap();
    let diff = (whole.value - left.value - right.value).norm();
    assert!(diff <= whole.est_error + left.est_error + right.est_error);
}

#[test]
fn zero_frequency_is_plain_quadrature() {
    let amp = |t: C64| t * t;
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp);
    let q = quad_oscillatory(&spec, Interval::new(0.0, 3.0), 0.0, 1e-13).unwrap();
    assert!((q.value.re - 9.0).abs() < 1e-13);
}

#[test]
fn singularity_in_rotated_sector_is_rejected() {
    let amp = |t: C64| (t - C64::new(1.0, 0.2)).inv();
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryHalfLine, &amp)
        .analytic()
        .with_singularities(&[C64::new(1.0, 0.2)]);
    let r = quad_oscillatory(&spec, Interval::half_line(0.0), 5.0, 1e-10);
    assert!(matches!(r, Err(Error::SingularityOnPath { .. })), "{r:?}");
}

#[test]
fn bessel_series_and_contour_agree() {
    let s = bessel_j_series(10.0, 8.0).unwrap();
    let c = bessel_j_contour(10.0, 8.0).unwrap();
    assert!((s.value - c.value).norm() <= 1e-10 * s.value.norm());
    // elsewhere the two must agree within their combined error estimates
    for (nu, x) in [(10.5, 8.0), (3.25, 2.0), (20.0, 30.0), (40.0, 20.0)] {
        let s = bessel_j_series(nu, x).unwrap();
        let c = bessel_j_contour(nu, x).unwrap();
        let d = (s.value - c.value).norm();
        assert!(d <= 10.0 * (s.est_error + c.est_error), "nu={nu} x={x}: {d}");
    }
}
