//! Text, JSON and CSV renderings. Every number goes through [`num`] so
//! identical runs produce identical bytes.

use std::fmt::Write as _;
use std::io::Write;

use asymptotika::C64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::commands::{Comparison, Evaluation, SweepRow, TermRow};
use crate::fit::ConvergenceFit;

/// 17 significant digits in lowercase scientific notation.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        // -0 and 0 print alike
        format!("{:.16e}", x + 0.0)
    }
}

/// A float serialized with [`num`]; non-finite values become `null`.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Serialize)]
struct Complex {
    re: Num,
    im: Num,
}

fn cx(z: C64) -> Complex {
    Complex { re: Num(z.re), im: Num(z.im) }
}

#[derive(Serialize)]
struct OracleJson {
    re: Num,
    im: Num,
    est_error: Num,
}

#[derive(Serialize)]
struct ErrorJson {
    abs: Num,
    rel: Num,
}

#[derive(Serialize)]
struct TermJson {
    index: usize,
    coefficient: Complex,
    scale: Complex,
    term: Complex,
    magnitude: Num,
    partial_sum: Complex,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    method: &'a str,
    params: serde_json::Map<String, serde_json::Value>,
    n_terms: usize,
    value: Complex,
    oracle: Option<OracleJson>,
    error: Option<ErrorJson>,
    smallest_term_index: Option<usize>,
    terms: Vec<TermJson>,
}

fn params_json(e: &Evaluation) -> serde_json::Map<String, serde_json::Value> {
    e.params.iter().map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string()))).collect()
}

fn terms_json(rows: &[TermRow]) -> Vec<TermJson> {
    rows.iter()
        .map(|r| TermJson {
            index: r.index,
            coefficient: cx(r.coefficient),
            scale: cx(r.scale),
            term: cx(r.term),
            magnitude: Num(r.magnitude),
            partial_sum: cx(r.partial_sum),
        })
        .collect()
}

fn smallest(e: &Evaluation) -> Option<usize> {
    (!e.rows.is_empty()).then_some(e.report.smallest_term_index)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn expand_json(e: &Evaluation) -> String {
    to_json(&ReportJson {
        method: e.method,
        params: params_json(e),
        n_terms: e.n_terms,
        value: cx(e.report.value()),
        oracle: None,
        error: None,
        smallest_term_index: smallest(e),
        terms: terms_json(&e.rows),
    })
}

pub fn compare_json(c: &Comparison) -> String {
    let e = &c.evaluation;
    to_json(&ReportJson {
        method: e.method,
        params: params_json(e),
        n_terms: e.n_terms,
        value: cx(c.value),
        oracle: Some(OracleJson { re: Num(c.oracle.value.re), im: Num(c.oracle.value.im), est_error: Num(c.oracle.est_error) }),
        error: Some(ErrorJson { abs: Num(c.abs_err), rel: Num(c.rel_err) }),
        smallest_term_index: smallest(e),
        terms: terms_json(&e.rows),
    })
}

fn header(e: &Evaluation) -> String {
    let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("method {}  {}\n", e.method, params.join(" "))
}

pub fn expand_text(e: &Evaluation) -> String {
    let mut s = header(e);
    let _ = writeln!(
        s,
        "{:>3}  {:>24} {:>24}  {:>24} {:>24}  {:>24}  {:>24} {:>24}",
        "n", "coeff_re", "coeff_im", "scale_re", "scale_im", "magnitude", "sum_re", "sum_im"
    );
    for r in &e.rows {
        let mark = if r.index == e.report.smallest_term_index { "  <- smallest" } else { "" };
        let _ = writeln!(
            s,
            "{:>3}  {:>24} {:>24}  {:>24} {:>24}  {:>24}  {:>24} {:>24}{mark}",
            r.index,
            num(r.coefficient.re),
            num(r.coefficient.im),
            num(r.scale.re),
            num(r.scale.im),
            num(r.magnitude),
            num(r.partial_sum.re),
            num(r.partial_sum.im),
        );
    }
    if !e.rows.is_empty() {
        let v = e.report.value();
        let _ = writeln!(s, "smallest term: {}", e.report.smallest_term_index);
        let _ = writeln!(s, "value: {} {}", num(v.re), num(v.im));
    }
    s
}

pub fn compare_text(c: &Comparison) -> String {
    let mut s = header(&c.evaluation);
    let _ = writeln!(s, "n_terms        {}", c.evaluation.n_terms);
    let _ = writeln!(s, "expansion      {} {}", num(c.value.re), num(c.value.im));
    let _ = writeln!(s, "oracle         {} {}", num(c.oracle.value.re), num(c.oracle.value.im));
    let _ = writeln!(s, "oracle_error   {}", num(c.oracle.est_error));
    let _ = writeln!(s, "abs_err        {}", num(c.abs_err));
    let _ = writeln!(s, "rel_err        {}", num(c.rel_err));
    s
}

pub const CSV_HEADER: [&str; 9] =
    ["axis", "value_re", "value_im", "oracle_re", "oracle_im", "abs_err", "rel_err", "oracle_est_err", "error"];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let mut rec = vec![num(r.axis)];
        match &r.outcome {
            Ok(c) => {
                for x in [c.value.re, c.value.im, c.oracle.value.re, c.oracle.value.im, c.abs_err, c.rel_err, c.oracle.est_error] {
                    rec.push(num(x));
                }
                rec.push(String::new());
            }
            Err(msg) => {
                rec.extend(std::iter::repeat_n(String::new(), 7));
                rec.push(msg.clone());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct PointJson {
    x: Num,
    abs_err: Num,
}

#[derive(Serialize)]
struct FitJson<'a> {
    method: &'a str,
    n_terms: usize,
    status: crate::fit::FitStatus,
    slope: Num,
    intercept: Num,
    r_squared: Num,
    predicted: Option<Num>,
    points: Vec<PointJson>,
    floored: Vec<PointJson>,
}

fn points_json(p: &[(f64, f64)]) -> Vec<PointJson> {
    p.iter().map(|&(x, e)| PointJson { x: Num(x), abs_err: Num(e) }).collect()
}

pub fn fit_json(method: &str, n_terms: usize, f: &ConvergenceFit) -> String {
    to_json(&FitJson {
        method,
        n_terms,
        status: f.status,
        slope: Num(f.slope),
        intercept: Num(f.intercept),
        r_squared: Num(f.r_squared),
        predicted: f.predicted.map(Num),
        points: points_json(&f.points),
        floored: points_json(&f.floored),
    })
}

pub fn fit_text(method: &str, n_terms: usize, f: &ConvergenceFit) -> String {
    let mut s = format!("method {method}  n_terms {n_terms}\n");
    for &(x, e) in &f.points {
        let _ = writeln!(s, "{:>24}  {:>24}", num(x), num(e));
    }
    for &(x, e) in &f.floored {
        let _ = writeln!(s, "{:>24}  {:>24}  (noise floor)", num(x), num(e));
    }
    let _ = writeln!(s, "slope      {}", num(f.slope));
    let _ = writeln!(s, "intercept  {}", num(f.intercept));
    let _ = writeln!(s, "r_squared  {}", num(f.r_squared));
    match f.predicted {
        Some(p) => {
            let _ = writeln!(s, "predicted  {}", num(p));
        }
        None => s.push_str("predicted  none\n"),
    }
    let status = match f.status {
        crate::fit::FitStatus::Pass => "pass",
        crate::fit::FitStatus::Fail => "fail",
        crate::fit::FitStatus::Inconclusive => "inconclusive",
    };
    let _ = writeln!(s, "status     {status}");
    s
}
