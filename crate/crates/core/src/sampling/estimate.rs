use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
}

impl Estimate {
    pub fn relative_stderr(&self) -> f64 {
        if self.mean == 0.0 {
            0.0
        } else {
            self.stderr / self.mean.abs()
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self { mean: self.mean * c, stderr: self.stderr * c.abs(), ..self }
    }

    /// `mean^p` with first-order (delta method) error propagation.
    pub fn powf(self, p: f64) -> Self {
        let mean = self.mean.powf(p);
        let deriv = if self.mean == 0.0 { 0.0 } else { p * self.mean.powf(p - 1.0) };
        Self { mean, stderr: (deriv * self.stderr).abs(), ..self }
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }
}

/// Sample mean and `sd / sqrt(n)` (unbiased sample variance).
pub fn mc_estimate(values: &[f64]) -> Result<Estimate> {
    if values.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let stderr = if n > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(Estimate { mean, stderr, n_samples: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_values() {
        let e = mc_estimate(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.stderr, 0.0);
        assert_eq!(e.n_samples, 4);
    }

    #[test]
    fn two_point_variance() {
        let e = mc_estimate(&[0.0, 2.0]).unwrap();
        assert!((e.mean - 1.0).abs() < 1e-15);
        assert!((e.stderr - 1.0).abs() < 1e-15);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(mc_estimate(&[]), Err(GeomError::EmptyInput));
    }

    #[test]
    fn delta_method_power() {
        let e = Estimate { mean: 4.0, stderr: 0.4, n_samples: 10 }.powf(0.5);
        assert!((e.mean - 2.0).abs() < 1e-15);
        assert!((e.stderr - 0.1).abs() < 1e-15);
    }
}
