use std::collections::BTreeMap;

use asymptotika::Expr;

use crate::CliError;

/// `name=value` pairs given with `--param`, with method defaults filled in.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse<S: AsRef<str>>(pairs: &[S]) -> Result<Params, CliError> {
        let mut values = BTreeMap::new();
        for p in pairs {
            let p = p.as_ref();
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("parameter `{p}` is not of the form name=value")))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(CliError::Usage(format!("parameter `{p}` has an empty name")));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Params { values })
    }

    pub fn set(&mut self, name: &str, value: impl Into<String>) {
        self.values.insert(name.to_string(), value.into());
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(|k| k.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Numbers accept `inf`, `pi` and simple fractions such as `1/3`.
    pub fn real(&self, name: &str) -> Result<f64, CliError> {
        let s = self.get(name).ok_or_else(|| CliError::Usage(format!("missing parameter `{name}`")))?;
        parse_real(s).ok_or_else(|| CliError::Usage(format!("parameter `{name}`: `{s}` is not a number")))
    }

    /// Integer parameters round to the nearest integer so they can ride on
    /// log grids.
    pub fn natural(&self, name: &str) -> Result<u64, CliError> {
        let x = self.real(name)?;
        if !(x.is_finite() && x >= 0.0) {
            return Err(CliError::Usage(format!("parameter `{name}` must be a nonnegative integer")));
        }
        Ok(x.round() as u64)
    }

    pub fn expr(&self, name: &str) -> Result<Expr, CliError> {
        let s = self.get(name).ok_or_else(|| CliError::Usage(format!("missing parameter `{name}`")))?;
        Expr::parse(s).map_err(|e| CliError::Usage(format!("parameter `{name}`: {e}")))
    }
}

pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" | "infinity" => return Some(f64::INFINITY),
        "-inf" | "-infinity" => return Some(f64::NEG_INFINITY),
        "pi" => return Some(std::f64::consts::PI),
        _ => {}
    }
    if let Some((n, d)) = s.split_once('/') {
        return Some(n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?);
    }
    s.parse().ok()
}
