use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::RngSeed;
use crate::error::{GeomError, Result};
use crate::linalg::{dot, norm, orthonormal_complement};

/// A unit vector in R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Normalizes `coords`; fails on the zero vector.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let r = norm(&coords);
        if !(r.is_finite() && r > 0.0) {
            return Err(GeomError::InvalidDimension("cannot normalize a zero vector".into()));
        }
        Ok(Self(coords.into_iter().map(|x| x / r).collect()))
    }

    pub fn axis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        dot(&self.0, x)
    }

    /// Orthonormal basis of the hyperplane orthogonal to this direction.
    pub fn orthogonal_basis(&self) -> Vec<Vec<f64>> {
        orthonormal_complement(std::slice::from_ref(&self.0), self.0.len())
    }
}

impl AsRef<[f64]> for Direction {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn gaussian_direction<R: Rng>(n: usize, rng: &mut R) -> Direction {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(d) = Direction::new(v) {
            return d;
        }
    }
}

/// i.i.d. uniform directions on S^{n-1} (normalized Gaussian vectors).
pub fn sample_sphere(n: usize, count: usize, seed: RngSeed) -> Result<Vec<Direction>> {
    if n < 2 {
        return Err(GeomError::InvalidDimension(format!("sphere sampling needs n >= 2, got {n}")));
    }
    let mut rng = seed.rng();
    Ok((0..count).map(|_| gaussian_direction(n, &mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::mc_estimate;

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(sample_sphere(1, 3, RngSeed::new(0, 0)), Err(GeomError::InvalidDimension(_))));
    }

    #[test]
    fn deterministic() {
        let a = sample_sphere(2, 4, RngSeed::new(17, 3)).unwrap();
        let b = sample_sphere(2, 4, RngSeed::new(17, 3)).unwrap();
        assert_eq!(a, b);
        for d in &a {
            assert!((norm(d.coords()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn second_moment_is_one_third() {
        let dirs = sample_sphere(3, 10_000, RngSeed::new(1, 0)).unwrap();
        let v: Vec<f64> = dirs.iter().map(|d| d.coords()[0].powi(2)).collect();
        let e = mc_estimate(&v).unwrap();
        assert!(e.covers(1.0 / 3.0, 3.0), "{e:?}");
    }

    #[test]
    fn mean_abs_coordinate_is_one_half() {
        // On S^2 the first coordinate is uniform on [-1, 1] (Archimedes), so
        // E|x1| = int_0^1 t dt = 1/2.
        let dirs = sample_sphere(3, 10_000, RngSeed::new(2, 0)).unwrap();
        let v: Vec<f64> = dirs.iter().map(|d| d.coords()[0].abs()).collect();
        let e = mc_estimate(&v).unwrap();
        assert!(e.covers(0.5, 3.0), "{e:?}");
    }

    #[test]
    fn orthogonal_basis_spans_hyperplane() {
        let d = Direction::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = d.orthogonal_basis();
        assert_eq!(b.len(), 3);
        for v in &b {
            assert!(d.dot(v).abs() < 1e-12);
        }
    }
}
