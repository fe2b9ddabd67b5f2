//! Built-in methods: an expansion and an independent reference for each.

use std::f64::consts::PI;

use asymptotika::classical::{expint_expand, kv_expand, laplace_expand, legendre_expand, watson_expand};
use asymptotika::oracle::{
    IntegrandKind, IntegrandSpec, Interval, OracleValue, Phase, bessel_j_ref, bessel_k_ref, legendre_ref, quad_laplace,
    quad_oscillatory,
};
use asymptotika::oscillatory::{
    EndpointSingularityProblem, PhaseAmplitudePair, bleistein_endpoint, bleistein_stationary, erdelyi_endpoint, ibp_expand,
};
use asymptotika::uniform::{
    AIRY_MIN_ORDER, PoleProblem, SN_MIN_N, airy_bessel_expand, debruijn_expand, sn_direct, sn_expand, vdw_expand,
};
use asymptotika::{C64, Expansion, Expr, JetProgram, Prefactor, Scale, Stream};

use crate::{CliError, Params};

type Build = fn(&Params, usize) -> Result<Expansion, CliError>;
type Oracle = fn(&Params, f64) -> Result<OracleValue, CliError>;

pub struct Method {
    pub name: &'static str,
    pub summary: &'static str,
    /// The parameter the expansion is asymptotic in.
    pub large: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
    build: Build,
    oracle: Oracle,
}

impl Method {
    /// User parameters checked against the method's names, defaults filled in.
    pub fn params(&self, user: &Params) -> Result<Params, CliError> {
        for name in user.names() {
            if !self.defaults.iter().any(|(k, _)| *k == name) {
                let known: Vec<&str> = self.defaults.iter().map(|(k, _)| *k).collect();
                return Err(CliError::Usage(format!(
                    "method `{}` has no parameter `{name}` (known: {})",
                    self.name,
                    known.join(", ")
                )));
            }
        }
        let mut p = user.clone();
        for (k, v) in self.defaults {
            if p.get(k).is_none() {
                p.set(k, *v);
            }
        }
        Ok(p)
    }

    pub fn large_value(&self, p: &Params) -> Result<f64, CliError> {
        p.real(self.large)
    }

    pub fn expansion(&self, p: &Params, n_terms: usize) -> Result<Expansion, CliError> {
        (self.build)(p, n_terms)
    }

    pub fn oracle(&self, p: &Params, tol: f64) -> Result<OracleValue, CliError> {
        (self.oracle)(p, tol)
    }
}

fn num(context: &str) -> impl Fn(asymptotika::Error) -> CliError + '_ {
    move |source| CliError::Numerical { context: context.to_string(), source }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Pointwise amplitude from an expression; failures become NaN so the
/// quadrature reports them.
fn pointwise(f: &Expr) -> impl Fn(C64) -> C64 + '_ {
    move |t| f.eval_point(t).unwrap_or(C64::new(f64::NAN, f64::NAN))
}

fn scaled(o: OracleValue, s: f64) -> OracleValue {
    OracleValue { value: o.value * s, est_error: o.est_error * s.abs(), ..o }
}

pub const METHODS: &[Method] = &[
    Method {
        name: "expint",
        summary: "z e^z E1(z) from Watson's lemma",
        large: "z",
        defaults: &[("z", "10")],
        build: |_, n| expint_expand(n).map_err(num("expint")),
        oracle: |p, tol| {
            let z = p.real("z")?;
            let g = move |t: C64| (-z * t).exp() / (t + 1.0);
            let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(z);
            let o = quad_laplace(&spec, Interval::half_line(0.0), tol).map_err(num("expint oracle"))?;
            Ok(scaled(o, z))
        },
    },
    Method {
        name: "watson",
        summary: "int_0^inf t^(lambda-1) f(t) e^(-zt) dt",
        large: "z",
        defaults: &[("f", "1/(1+t)"), ("lambda", "1"), ("z", "10")],
        build: build_watson,
        oracle: oracle_watson,
    },
    Method {
        name: "watson-expint",
        summary: "Watson's lemma for e^z E1(z)",
        large: "z",
        defaults: &[("lambda", "1"), ("z", "10")],
        build: |p, n| {
            let mut p = p.clone();
            p.set("f", "1/(1+t)");
            build_watson(&p, n)
        },
        oracle: |p, tol| {
            let mut p = p.clone();
            p.set("f", "1/(1+t)");
            oracle_watson(&p, tol)
        },
    },
    Method {
        name: "kv",
        summary: "modified Bessel function K_nu(z)",
        large: "z",
        defaults: &[("nu", "0.5"), ("z", "3")],
        build: |p, n| kv_expand(c(p.real("nu")?), n).map_err(num("kv")),
        oracle: |p, _| bessel_k_ref(p.real("nu")?, p.real("z")?).map_err(num("kv oracle")),
    },
    Method {
        name: "legendre",
        summary: "Legendre polynomial P_n(cos theta)",
        large: "n",
        defaults: &[("theta", "0.8"), ("n", "50")],
        build: |p, n| legendre_expand(p.real("theta")?, n).map_err(num("legendre")),
        oracle: |p, _| legendre_ref(p.natural("n")? as usize, p.real("theta")?.cos()).map_err(num("legendre oracle")),
    },
    Method {
        name: "laplace",
        summary: "int e^(-zt^2) f(t) dt over the real line",
        large: "z",
        defaults: &[("f", "cos(t)"), ("z", "25")],
        build: |p, n| {
            let f = p.expr("f")?;
            let jet = f.jet(c(0.0), 2 * n.max(1)).map_err(num("laplace amplitude"))?;
            laplace_expand(&jet, n, None).map_err(num("laplace"))
        },
        oracle: |p, tol| {
            let (f, z) = (p.expr("f")?, p.real("z")?);
            let amp = pointwise(&f);
            let g = move |t: C64| (-z * t * t).exp() * amp(t);
            let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g).with_decay(z);
            quad_laplace(&spec, Interval::line(), tol).map_err(num("laplace oracle"))
        },
    },
    Method {
        name: "ibp",
        summary: "int_a^b e^(i omega phi(t)) psi(t) dt without stationary points",
        large: "omega",
        defaults: &[("phi", "t"), ("psi", "exp(-t)"), ("a", "0"), ("b", "1"), ("omega", "50")],
        build: |p, n| {
            let (phi, psi) = (p.expr("phi")?, p.expr("psi")?);
            let pair = PhaseAmplitudePair { phi: &phi, psi: &psi, a: p.real("a")?, b: p.real("b")? };
            ibp_expand(&pair, n).map_err(num("ibp"))
        },
        oracle: |p, tol| {
            let (phi, psi) = (p.expr("phi")?, p.expr("psi")?);
            let (a, b, w) = (p.real("a")?, p.real("b")?, p.real("omega")?);
            let dphi_max = phase_slope_bound(&phi, a, b)?;
            let ph = |t: f64| phi.eval_point(c(t)).map(|v| v.re).unwrap_or(f64::NAN);
            let amp = pointwise(&psi);
            let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp)
                .with_phase(Phase::General { phi: &ph, dphi_max });
            quad_oscillatory(&spec, Interval::new(a, b), w, tol).map_err(num("ibp oracle"))
        },
    },
    Method {
        name: "bleistein-stationary",
        summary: "int_a^b e^(i omega t^2) f(t) dt, a < 0 < b",
        large: "omega",
        defaults: &[("f", "exp(t)"), ("a", "-1"), ("b", "2"), ("omega", "40")],
        build: |p, n| {
            let f = p.expr("f")?;
            bleistein_stationary(&f, p.real("a")?, p.real("b")?, n).map_err(num("bleistein-stationary"))
        },
        oracle: |p, tol| {
            let f = p.expr("f")?;
            let amp = pointwise(&f);
            let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp).with_phase(Phase::Quadratic);
            quad_oscillatory(&spec, Interval::new(p.real("a")?, p.real("b")?), p.real("omega")?, tol)
                .map_err(num("bleistein-stationary oracle"))
        },
    },
    Method {
        name: "erdelyi",
        summary: "int_alpha^beta e^(i omega t) (t-alpha)^(lambda-1) (beta-t)^(mu-1) f(t) dt",
        large: "omega",
        defaults: ENDPOINT_DEFAULTS,
        build: |p, n| {
            let f = p.expr("f")?;
            erdelyi_endpoint(&endpoint_problem(p, &f)?, n).map_err(num("erdelyi"))
        },
        oracle: oracle_endpoint,
    },
    Method {
        name: "bleistein-endpoint",
        summary: "the erdelyi integral with 1F1 prefactors, uniform as beta - alpha -> 0",
        large: "omega",
        defaults: ENDPOINT_DEFAULTS,
        build: |p, n| {
            let f = p.expr("f")?;
            bleistein_endpoint(&endpoint_problem(p, &f)?, n).map_err(num("bleistein-endpoint"))
        },
        oracle: oracle_endpoint,
    },
    Method {
        name: "vdw",
        summary: "(1/2 pi i) int e^(-omega t^2) f(t)/(t - i alpha) dt, uniform in alpha",
        large: "omega",
        defaults: &[("f", "exp(t)"), ("alpha", "0.3"), ("alpha_im", "0"), ("omega", "20"), ("strip", "inf")],
        build: |p, n| {
            let f = p.expr("f")?;
            let alpha = C64::new(p.real("alpha")?, p.real("alpha_im")?);
            let problem = PoleProblem { f: &f, alpha, omega: p.real("omega")?, strip: p.real("strip")? };
            vdw_expand(&problem, n).map_err(num("vdw"))
        },
        oracle: oracle_vdw,
    },
    Method {
        name: "debruijn",
        summary: "beta^2 int e^(-omega t^2) f(t)/(beta^2 + t^2) dt with beta = omega^(-alpha/2)",
        large: "omega",
        defaults: &[("f", "exp(t)"), ("alpha", "1"), ("omega", "30")],
        build: |p, n| {
            let f = p.expr("f")?;
            debruijn_expand(&f, p.real("alpha")?, p.real("omega")?, n).map_err(num("debruijn"))
        },
        oracle: |p, tol| {
            let (f, omega) = (p.expr("f")?, p.real("omega")?);
            let beta = omega.powf(-0.5 * p.real("alpha")?);
            let amp = pointwise(&f);
            let g = move |t: C64| beta * beta * (-omega * t * t).exp() * amp(t) / (beta * beta + t * t);
            let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g)
                .with_decay(omega)
                .with_breakpoints(&line_breaks(beta));
            quad_laplace(&spec, Interval::line(), tol).map_err(num("debruijn oracle"))
        },
    },
    Method {
        name: "airy-bessel",
        summary: "J_nu(nu z) with an Airy leading term, uniform through z = 1",
        large: "nu",
        defaults: &[("nu", "50"), ("z", "1")],
        build: |p, n| {
            if !(p.real("nu")? >= AIRY_MIN_ORDER) {
                return Err(CliError::Usage(format!("airy-bessel needs nu >= {AIRY_MIN_ORDER}")));
            }
            airy_bessel_expand(p.real("z")?, n.clamp(1, 2)).map_err(num("airy-bessel"))
        },
        oracle: |p, _| {
            let nu = p.real("nu")?;
            bessel_j_ref(nu, nu * p.real("z")?).map_err(num("airy-bessel oracle"))
        },
    },
    Method {
        name: "sn",
        summary: "S_n(z) = sum_{k=1}^n z^k/k, uniform for 0 < z <= 1",
        large: "n",
        defaults: &[("n", "50"), ("z", "0.9")],
        build: |p, n| {
            if p.natural("n")? < SN_MIN_N {
                return Err(CliError::Usage(format!("sn needs n >= {SN_MIN_N}")));
            }
            sn_expand(p.real("z")?, n).map_err(num("sn"))
        },
        oracle: |p, _| {
            let n = p.natural("n")?;
            let v = sn_direct(n, p.real("z")?);
            Ok(OracleValue {
                value: c(v),
                est_error: 2.0 * f64::EPSILON * v.abs(),
                evaluations: n as usize,
                subdivisions: 0,
            })
        },
    },
    Method {
        name: "mstph36",
        summary: "int e^(i omega t)/(1+t^2) dt = pi e^(-omega), the oscillatory oracle gate",
        large: "omega",
        defaults: &[("omega", "4")],
        build: |_, _| {
            let s = Stream::new(
                "closed-form",
                Prefactor::Exponential { amplitude: c(PI), rate: c(-1.0) },
                vec![c(1.0)],
                Scale::power(0.0),
            );
            Ok(Expansion::new("mstph36", vec![s]))
        },
        oracle: |p, tol| {
            let amp = |t: C64| (t * t + 1.0).inv();
            let spec = IntegrandSpec::new(IntegrandKind::OscillatoryHalfLine, &amp)
                .analytic()
                .with_singularities(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
            quad_oscillatory(&spec, Interval::line(), p.real("omega")?, tol).map_err(num("mstph36 oracle"))
        },
    },
];

const ENDPOINT_DEFAULTS: &[(&str, &str)] =
    &[("f", "exp(-t)"), ("alpha", "0"), ("beta", "2"), ("lambda", "1/2"), ("mu", "1/3"), ("omega", "50")];

pub fn lookup(name: &str) -> Result<&'static Method, CliError> {
    METHODS.iter().find(|m| m.name == name).ok_or_else(|| {
        let known: Vec<&str> = METHODS.iter().map(|m| m.name).collect();
        CliError::Usage(format!("unknown method `{name}` (known: {})", known.join(", ")))
    })
}

fn build_watson(p: &Params, n: usize) -> Result<Expansion, CliError> {
    let f = p.expr("f")?;
    let jet = f.jet(c(0.0), n.max(1)).map_err(num("watson amplitude"))?;
    watson_expand(&jet, c(p.real("lambda")?), n, None).map_err(num("watson"))
}

fn oracle_watson(p: &Params, tol: f64) -> Result<OracleValue, CliError> {
    let (f, lambda, z) = (p.expr("f")?, p.real("lambda")?, p.real("z")?);
    let amp = pointwise(&f);
    let g = move |t: C64| (-z * t).exp() * amp(t);
    let spec = IntegrandSpec::new(IntegrandKind::LaplaceRealAxis, &g)
        .with_decay(z)
        .with_exponents(c(lambda - 1.0), c(0.0));
    quad_laplace(&spec, Interval::half_line(0.0), tol).map_err(num("watson oracle"))
}

fn endpoint_problem<'a>(p: &Params, f: &'a Expr) -> Result<EndpointSingularityProblem<'a>, CliError> {
    Ok(EndpointSingularityProblem {
        f,
        alpha: p.real("alpha")?,
        beta: p.real("beta")?,
        lambda: c(p.real("lambda")?),
        mu: c(p.real("mu")?),
    })
}

fn oracle_endpoint(p: &Params, tol: f64) -> Result<OracleValue, CliError> {
    let f = p.expr("f")?;
    let amp = pointwise(&f);
    let spec = IntegrandSpec::new(IntegrandKind::OscillatoryFinite, &amp)
        .with_exponents(c(p.real("lambda")? - 1.0), c(p.real("mu")? - 1.0));
    quad_oscillatory(&spec, Interval::new(p.real("alpha")?, p.real("beta")?), p.real("omega")?, tol)
        .map_err(num("endpoint oracle"))
}

fn line_breaks(scale: f64) -> Vec<f64> {
    let s = scale.max(1e-6);
    vec![-10.0 * s, -s, 0.0, s, 10.0 * s, -1.0, 1.0]
}

/// The real-line integral, plus the residue at `iα` once the pole has crossed
/// the axis.
fn oracle_vdw(p: &Params, tol: f64) -> Result<OracleValue, CliError> {
    let (f, omega) = (p.expr("f")?, p.real("omega")?);
    let alpha = C64::new(p.real("alpha")?, p.real("alpha_im")?);
    if alpha.re == 0.0 {
        return Err(CliError::Usage("vdw oracle needs Re alpha != 0 (the pole sits on the path)".into()));
    }
    let ia = C64::new(0.0, 1.0) * alpha;
    let amp = pointwise(&f);
    let g = move |t: C64| (-omega * t * t).exp() * amp(t) / (t - ia) / C64::new(0.0, 2.0 * PI);
    let spec = IntegrandSpec::new(IntegrandKind::ComplexLine, &g)
        .with_decay(omega)
        .with_breakpoints(&line_breaks(alpha.norm()));
    let mut o = quad_laplace(&spec, Interval::line(), tol).map_err(num("vdw oracle"))?;
    if alpha.re < 0.0 {
        let fia = f.eval_point(ia).map_err(num("vdw residue"))?;
        o.value += (omega * alpha * alpha).exp() * fia;
    }
    Ok(o)
}

/// Sampled bound on `|φ′|` with a safety margin.
fn phase_slope_bound(phi: &Expr, a: f64, b: f64) -> Result<f64, CliError> {
    let mut m: f64 = 0.0;
    for i in 0..=256 {
        let t = a + (b - a) * i as f64 / 256.0;
        let d = phi.jet(c(t), 1).map_err(num("phase derivative"))?.coeff(1).norm();
        m = m.max(d);
    }
    Ok(1.25 * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_method_builds_with_defaults() {
        for m in METHODS {
            let p = m.params(&Params::default()).unwrap();
            let e = m.expansion(&p, 2).unwrap_or_else(|e| panic!("{}: {e}", m.name));
            assert!(e.n_terms() >= 1, "{}", m.name);
            assert!(m.large_value(&p).unwrap() > 0.0);
        }
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert!(matches!(lookup("nope"), Err(CliError::Usage(_))));
        let p = Params::parse(&["zz=1"]).unwrap();
        assert!(matches!(lookup("expint").unwrap().params(&p), Err(CliError::Usage(_))));
    }
}
