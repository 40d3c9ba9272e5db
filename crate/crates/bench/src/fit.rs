//! Least-squares power-law fits.

use thiserror::Error;

use crate::sweep::SweepRow;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination, in `[0, 1]`.
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("values must be positive, got n = {n}, value = {value}")]
    NonPositive { n: f64, value: f64 },
    #[error("rows mix quantities `{0}` and `{1}`")]
    MixedQuantities(String, String),
    #[error("all n are equal")]
    Degenerate,
}

/// Fit `ln value = slope · ln n + intercept` by ordinary least squares.
pub fn fit_points(points: &[(f64, f64)]) -> Result<FitResult, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if let Some(&(n, value)) = points.iter().find(|&&(n, v)| !(n > 0.0 && v > 0.0) || !v.is_finite()) {
        return Err(FitError::NonPositive { n, value });
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::Degenerate);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        let ss_res: f64 = logs.iter().map(|p| (p.1 - (slope * p.0 + intercept)).powi(2)).sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
    })
}

/// Fit sweep rows of a single quantity against `n`.
pub fn fit_loglog(rows: &[SweepRow]) -> Result<FitResult, FitError> {
    if let Some(first) = rows.first() {
        if let Some(other) = rows.iter().find(|r| r.quantity != first.quantity) {
            return Err(FitError::MixedQuantities(first.quantity.clone(), other.quantity.clone()));
        }
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.value.to_f64())).collect();
    fit_points(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_quadratic() {
        let f = fit_points(&[(10.0, 100.0), (20.0, 400.0), (40.0, 1600.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(f.intercept.abs() < 1e-9);
    }

    #[test]
    fn exact_linear() {
        let f = fit_points(&[(10.0, 10.0), (20.0, 20.0), (40.0, 40.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_values_fit_flat() {
        let f = fit_points(&[(10.0, 5.0), (20.0, 5.0), (40.0, 5.0)]).unwrap();
        assert_eq!(f.slope, 0.0);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(fit_points(&[(1.0, 1.0), (2.0, 2.0)]), Err(FitError::TooFewPoints(2)));
        assert!(matches!(
            fit_points(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0)]),
            Err(FitError::NonPositive { .. })
        ));
        assert_eq!(fit_points(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]), Err(FitError::Degenerate));
    }

    #[test]
    fn noisy_fit_stays_in_range() {
        let f = fit_points(&[(1.0, 3.0), (2.0, 1.0), (3.0, 7.0), (4.0, 2.0)]).unwrap();
        assert!((0.0..=1.0).contains(&f.r_squared));
    }
}
