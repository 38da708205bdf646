//! Log–log least squares for power-law exponents.

use serde::{Deserialize, Serialize};

use crate::LabError;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual in log–log space; non-power-law data fails loudly
    /// through this rather than silently through a meaningless slope.
    pub residual: f64,
}

/// Least-squares line through (ln x, ln y). Needs at least 3 points and
/// strictly positive coordinates.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<FitResult, LabError> {
    if points.len() < 3 {
        return Err(LabError::domain(format!(
            "power-law fits need at least 3 sweep points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| *x <= 0.0 || *y <= 0.0) {
        return Err(LabError::domain(
            "power-law fits need positive parameter values and norms",
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(LabError::domain("sweep points are degenerate in the parameter"));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss: f64 = logs
        .iter()
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(FitResult {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

/// One parameter sweep: measured norms per parameter value plus the fitted
/// power law and the configuration that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub parameter: String,
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub residual: f64,
    pub metadata: SweepMetadata,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub d: usize,
    pub k: usize,
    /// Exponents as exact "num/den" strings.
    pub p: String,
    pub q: String,
    pub resolution: usize,
    pub frames: usize,
    pub samples: usize,
    pub seed: u64,
}

impl SweepResult {
    pub fn from_points(
        parameter: impl Into<String>,
        points: Vec<(f64, f64)>,
        metadata: SweepMetadata,
    ) -> Result<Self, LabError> {
        let fit = fit_loglog(&points)?;
        Ok(SweepResult {
            parameter: parameter.into(),
            points,
            slope: fit.slope,
            residual: fit.residual,
            metadata,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let pts: Vec<(f64, f64)> = [0.2, 0.1, 0.05, 0.025]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(-0.75)))
            .collect();
        let fit = fit_loglog(&pts).unwrap();
        assert!((fit.slope + 0.75).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn residual_flags_non_power_law() {
        let pts = vec![(1.0, 1.0), (2.0, 10.0), (4.0, 1.0), (8.0, 10.0)];
        let fit = fit_loglog(&pts).unwrap();
        assert!(fit.residual > 0.5);
    }

    #[test]
    fn needs_three_points() {
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0), (3.0, -1.0)]).is_err());
    }
}
