use serde::Serialize;

/// Half-width of the accepted band around the predicted slope.
pub const SLOPE_BAND: f64 = 0.2;

/// Fewest points a fit is made from.
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitStatus {
    Pass,
    Fail,
    /// Too few errors above the oracle noise floor, or no predicted order.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(large parameter, abs error)` for the points used in the fit.
    pub points: Vec<(f64, f64)>,
    /// Points dropped because their error was at the oracle noise floor.
    pub floored: Vec<(f64, f64)>,
    pub predicted: Option<f64>,
    pub status: FitStatus,
}

/// Least-squares line through `(ln x, ln y)`: `(slope, intercept, r²)`.
pub fn loglog(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    (slope, intercept, r2)
}

/// `(x, abs error, noise floor)`
pub type Sample = (f64, f64, f64);

/// Fit the points whose error is above the floor.
pub fn fit(samples: &[Sample], predicted: Option<f64>) -> ConvergenceFit {
    let (points, floored): (Vec<Sample>, Vec<Sample>) = samples.iter().partition(|s| s.1 > s.2);
    let points: Vec<(f64, f64)> = points.iter().map(|s| (s.0, s.1)).collect();
    let floored: Vec<(f64, f64)> = floored.iter().map(|s| (s.0, s.1)).collect();
    if points.len() < MIN_POINTS {
        return ConvergenceFit {
            slope: f64::NAN,
            intercept: f64::NAN,
            r_squared: f64::NAN,
            points,
            floored,
            predicted,
            status: FitStatus::Inconclusive,
        };
    }
    let (slope, intercept, r_squared) = loglog(&points);
    let status = match predicted {
        None => FitStatus::Inconclusive,
        Some(p) if (slope - p).abs() <= SLOPE_BAND => FitStatus::Pass,
        Some(_) => FitStatus::Fail,
    };
    ConvergenceFit { slope, intercept, r_squared, points, floored, predicted, status }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let s: Vec<(f64, f64, f64)> = [20.0, 40.0, 80.0, 160.0].iter().map(|&x: &f64| (x, 3.0 * x.powi(-3), 0.0)).collect();
        let f = fit(&s, Some(-3.0));
        assert!((f.slope + 3.0).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-10);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(f.status, FitStatus::Pass);
        assert_eq!(fit(&s, Some(-2.0)).status, FitStatus::Fail);
    }

    #[test]
    fn noise_floor_is_inconclusive() {
        let s: Vec<(f64, f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x| (x, 1e-17, 1e-15)).collect();
        let f = fit(&s, Some(-1.0));
        assert_eq!(f.status, FitStatus::Inconclusive);
        assert_eq!(f.floored.len(), 4);
    }
}
