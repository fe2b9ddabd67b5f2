use std::f64::consts::PI;

use asymptotika::oracle::OracleValue;
use asymptotika::{C64, EvalReport, Expansion, Prefactor};
use rayon::prelude::*;

use crate::fit::{ConvergenceFit, MIN_POINTS, fit};
use crate::grid::{Grid, Spacing};
use crate::methods::{Method, lookup};
use crate::{CliError, Params};

/// One row of the term table.
#[derive(Debug, Clone, PartialEq)]
pub struct TermRow {
    pub index: usize,
    /// Coefficient and scale of the first stream contributing to the term.
    pub coefficient: C64,
    pub scale: C64,
    pub term: C64,
    pub magnitude: f64,
    pub partial_sum: C64,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub method: &'static str,
    pub params: Params,
    pub n_terms: usize,
    pub large: f64,
    pub expansion: Expansion,
    pub report: EvalReport,
    pub rows: Vec<TermRow>,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub evaluation: Evaluation,
    /// The expansion value compared: the sum through the smallest term.
    pub value: C64,
    pub oracle: OracleValue,
    pub abs_err: f64,
    pub rel_err: f64,
}

fn rows(e: &Expansion, r: &EvalReport, x: C64) -> Vec<TermRow> {
    (0..r.terms.len())
        .map(|n| {
            let s = e.streams.iter().find(|s| s.coeffs.get(n).is_some_and(|c| *c != C64::new(0.0, 0.0)));
            let (coefficient, scale) = match s {
                Some(s) => (s.coeffs[n], s.scale.eval(n, x)),
                None => (C64::new(0.0, 0.0), e.streams[0].scale.eval(n, x)),
            };
            TermRow {
                index: n,
                coefficient,
                scale,
                term: r.terms[n],
                magnitude: r.term_mags[n],
                partial_sum: r.partial_sums[n],
            }
        })
        .collect()
}

fn evaluate_with(m: &'static Method, params: Params, n_terms: usize) -> Result<Evaluation, CliError> {
    let large = m.large_value(&params)?;
    let expansion = m.expansion(&params, n_terms.max(1))?;
    let x = C64::new(large, 0.0);
    let report = expansion
        .evaluate_terms(x, n_terms)
        .map_err(|source| CliError::Numerical { context: format!("{} at {}={large}", m.name, m.large), source })?;
    let rows = rows(&expansion, &report, x);
    Ok(Evaluation { method: m.name, params, n_terms: report.terms.len(), large, expansion, report, rows })
}

pub fn expand(method: &str, params: &Params, n_terms: usize) -> Result<Evaluation, CliError> {
    let m = lookup(method)?;
    evaluate_with(m, m.params(params)?, n_terms)
}

fn compare_with(m: &'static Method, params: Params, n_terms: usize, tol: f64) -> Result<Comparison, CliError> {
    let evaluation = evaluate_with(m, params, n_terms)?;
    let oracle = m.oracle(&evaluation.params, tol)?;
    let value = evaluation.report.value();
    let abs_err = (value - oracle.value).norm();
    let rel_err = abs_err / oracle.value.norm();
    Ok(Comparison { evaluation, value, oracle, abs_err, rel_err })
}

pub fn compare(method: &str, params: &Params, n_terms: usize, tol: f64) -> Result<Comparison, CliError> {
    let m = lookup(method)?;
    compare_with(m, m.params(params)?, n_terms, tol)
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub method: String,
    pub fixed: Params,
    /// Parameter varied along the grid; the method's large parameter if `None`.
    pub axis: Option<String>,
    pub grid: Grid,
    pub n_terms: usize,
    pub tol: f64,
}

impl SweepSpec {
    fn resolve(&self) -> Result<(&'static Method, Params, String), CliError> {
        let m = lookup(&self.method)?;
        let axis = self.axis.clone().unwrap_or_else(|| m.large.to_string());
        let mut probe = self.fixed.clone();
        probe.set(&axis, "1");
        m.params(&probe)?;
        Ok((m, m.params(&self.fixed)?, axis))
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis: f64,
    pub outcome: Result<Comparison, String>,
}

fn at(params: &Params, axis: &str, x: f64) -> Params {
    let mut p = params.clone();
    p.set(axis, x.to_string());
    p
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = crate::thread_cap() {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

/// Rows in grid order. Failures at single points are kept as rows.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    let (m, params, axis) = spec.resolve()?;
    let points = spec.grid.points();
    let rows = pool()?.install(|| {
        points
            .par_iter()
            .map(|&x| SweepRow {
                axis: x,
                outcome: compare_with(m, at(&params, &axis, x), spec.n_terms, spec.tol).map_err(|e| e.to_string()),
            })
            .collect()
    });
    Ok(rows)
}

/// Error of the fixed-`N` sum at one point, with the oracle noise floor.
/// The expansion is rebuilt at each point since some depend on the large
/// parameter beyond the scale.
fn fixed_n_error(m: &'static Method, params: &Params, axis: &str, x: f64, n: usize, tol: f64) -> Result<(f64, f64), CliError> {
    let p = at(params, axis, x);
    let e = m.expansion(&p, n.max(1))?;
    let v = e
        .evaluate_terms(C64::new(x, 0.0), n)
        .map_err(|source| CliError::Numerical { context: format!("{} at {axis}={x}", m.name), source })?
        .sum();
    let o = m.oracle(&p, tol)?;
    let floor = 10.0 * o.est_error.max(8.0 * f64::EPSILON * o.value.norm());
    let w = exponential_scale(&e, x);
    Ok(((v - o.value).norm() / w, floor / w))
}

/// Largest `|e^{rate·x}|` among exponential prefactors. The remainder order
/// is algebraic relative to it.
fn exponential_scale(e: &Expansion, x: f64) -> f64 {
    let w = e
        .streams
        .iter()
        .filter_map(|s| match s.prefactor {
            Prefactor::Exponential { rate, .. } => Some((rate.re * x).exp()),
            _ => None,
        })
        .fold(0.0, f64::max);
    if w > 0.0 { w } else { 1.0 }
}

/// Remainder-order fit over a log grid of the large parameter.
///
/// Errors are measured relative to any exponential prefactor. When the
/// expansion carries several oscillating prefactors the remainder beats; each
/// point then records the largest error over one beat period.
pub fn convergence(spec: &SweepSpec) -> Result<ConvergenceFit, CliError> {
    let (m, params, axis) = spec.resolve()?;
    if axis != m.large {
        return Err(CliError::Usage(format!("convergence runs along the large parameter `{}`", m.large)));
    }
    if spec.grid.spacing != Spacing::Log || spec.grid.n < MIN_POINTS {
        return Err(CliError::Usage(format!("convergence needs a log grid with at least {MIN_POINTS} points")));
    }
    let e = m.expansion(&params, spec.n_terms.max(1))?;
    let n = spec.n_terms.min(e.n_terms());
    let spread = e.phase_spread();
    let points = spec.grid.points();
    let samples = pool()?.install(|| {
        points
            .par_iter()
            .map(|&x| {
                let offsets: Vec<f64> =
                    if spread > 0.0 { (0..8).map(|j| 2.0 * PI / spread * j as f64 / 8.0).collect() } else { vec![0.0] };
                let mut worst = (0.0f64, 0.0f64);
                for dx in offsets {
                    let (err, floor) = fixed_n_error(m, &params, &axis, x + dx, n, spec.tol)?;
                    worst = (worst.0.max(err), worst.1.max(floor));
                }
                Ok((x, worst.0, worst.1))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    Ok(fit(&samples, e.predicted_order(n)))
}
