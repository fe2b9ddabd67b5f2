use std::str::FromStr;

use crate::CliError;
use crate::params::parse_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `lin:a:b:n` or `log:a:b:n`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub spacing: Spacing,
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![self.a];
        }
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.b;
                }
                match self.spacing {
                    Spacing::Linear => self.a + (self.b - self.a) * (i as f64 / (n - 1) as f64),
                    // a constant ratio keeps doubling grids exact
                    Spacing::Log => self.a * (self.b / self.a).powf(1.0 / (n - 1) as f64).powi(i as i32),
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Grid, CliError> {
        let bad = |why: &str| CliError::Usage(format!("grid `{s}`: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(bad("expected lin:a:b:n or log:a:b:n"));
        }
        let spacing = match parts[0] {
            "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            _ => return Err(bad("spacing must be lin or log")),
        };
        let a = parse_real(parts[1]).ok_or_else(|| bad("bad start"))?;
        let b = parse_real(parts[2]).ok_or_else(|| bad("bad end"))?;
        let n: usize = parts[3].parse().map_err(|_| bad("bad point count"))?;
        if !(a.is_finite() && b.is_finite()) {
            return Err(bad("endpoints must be finite"));
        }
        if spacing == Spacing::Log && !(a > 0.0 && b > 0.0) {
            return Err(bad("log grids need positive endpoints"));
        }
        if n > 1 && a == b {
            return Err(bad("grid is not strictly monotone"));
        }
        Ok(Grid { spacing, a, b, n })
    }
}
