use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{Direction, RngSeed};
use crate::error::{GeomError, Result};
use crate::linalg::{dot, gram_schmidt, orthonormal_complement};

/// Orthonormal k-frame in R^n; rows are the basis vectors of the subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceBasis {
    dim_ambient: usize,
    rows: Vec<Vec<f64>>,
}

impl SubspaceBasis {
    /// Orthonormalizes the given spanning rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).ok_or(GeomError::EmptyInput)?;
        if rows.len() > n || rows.iter().any(|r| r.len() != n) {
            return Err(GeomError::InvalidDimension(format!("{} rows in R^{n}", rows.len())));
        }
        let (q, diag) = gram_schmidt(&rows);
        if diag.iter().any(|&d| d < 1e-12) {
            return Err(GeomError::InvalidDimension("rows are linearly dependent".into()));
        }
        Ok(Self { dim_ambient: n, rows: q })
    }

    pub(crate) fn from_orthonormal_rows(rows: Vec<Vec<f64>>, n: usize) -> Self {
        Self { dim_ambient: n, rows }
    }

    /// The hyperplane orthogonal to `xi`.
    pub fn hyperplane(xi: &Direction) -> Self {
        Self { dim_ambient: xi.dim(), rows: xi.orthogonal_basis() }
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(n: usize, axes: &[usize]) -> Self {
        let rows = axes.iter().map(|&i| Direction::axis(n, i).into_inner()).collect();
        Self { dim_ambient: n, rows }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_sub(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn frame(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows.len(), self.dim_ambient, |i, j| self.rows[i][j])
    }

    /// Coordinates of the orthogonal projection of `x` in this frame.
    pub fn coordinates_of(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// Frame of the orthogonal complement.
    pub fn complement(&self) -> Self {
        Self { dim_ambient: self.dim_ambient, rows: orthonormal_complement(&self.rows, self.dim_ambient) }
    }

    /// Unit normal of a hyperplane frame (k = n-1).
    pub fn normal(&self) -> Option<Direction> {
        (self.dim_sub() + 1 == self.dim_ambient)
            .then(|| Direction::new(self.complement().rows.remove(0)).expect("unit row"))
    }

    /// Re-expresses a frame given in the coordinates of `self` in ambient coordinates.
    pub fn lift(&self, inner: &SubspaceBasis) -> SubspaceBasis {
        let n = self.dim_ambient;
        let rows = inner
            .rows
            .iter()
            .map(|c| {
                let mut v = vec![0.0; n];
                for (ci, r) in c.iter().zip(&self.rows) {
                    for (vj, rj) in v.iter_mut().zip(r) {
                        *vj += ci * rj;
                    }
                }
                v
            })
            .collect();
        SubspaceBasis { dim_ambient: n, rows }
    }

    /// Largest deviation of `frame * frame^T` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut err = 0.0_f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                err = err.max((dot(a, b) - target).abs());
            }
        }
        err
    }
}

/// Haar-distributed frame from a Gaussian matrix by sign-fixed QR.
/// Gram-Schmidt on Gaussian rows is QR with a positive R diagonal.
pub(crate) fn haar_frame<R: Rng>(n: usize, k: usize, rng: &mut R) -> SubspaceBasis {
    loop {
        let g: Vec<Vec<f64>> =
            (0..k).map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect()).collect();
        let (q, diag) = gram_schmidt(&g);
        if diag.iter().all(|&d| d > 1e-12) {
            return SubspaceBasis { dim_ambient: n, rows: q };
        }
    }
}

/// Haar-distributed k-dimensional subspaces of R^n.
pub fn sample_grassmannian(n: usize, k: usize, count: usize, seed: RngSeed) -> Result<Vec<SubspaceBasis>> {
    if k == 0 || k > n {
        return Err(GeomError::InvalidDimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut rng = seed.rng();
    Ok((0..count).map(|_| haar_frame(n, k, &mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::mc_estimate;

    #[test]
    fn rejects_k_above_n() {
        assert!(sample_grassmannian(3, 4, 1, RngSeed::new(0, 0)).is_err());
        assert!(sample_grassmannian(3, 0, 1, RngSeed::new(0, 0)).is_err());
    }

    #[test]
    fn full_frame_is_orthogonal() {
        let f = &sample_grassmannian(3, 3, 1, RngSeed::new(5, 0)).unwrap()[0];
        let det = f.frame().determinant();
        assert!((det.abs() - 1.0).abs() < 1e-10);
        assert!(f.orthonormality_error() < 1e-10);
    }

    #[test]
    fn coordinate_symmetry_of_frames() {
        let frames = sample_grassmannian(4, 2, 1_000, RngSeed::new(8, 0)).unwrap();
        let v: Vec<f64> = frames.iter().map(|f| f.rows()[0][0].powi(2)).collect();
        let e = mc_estimate(&v).unwrap();
        assert!(e.covers(0.25, 3.0), "{e:?}");
    }

    #[test]
    fn lift_and_complement() {
        let xi = Direction::new(vec![0.3, -0.2, 0.9, 0.1]).unwrap();
        let h = SubspaceBasis::hyperplane(&xi);
        assert!(h.orthonormality_error() < 1e-12);
        let n = h.normal().unwrap();
        assert!((n.dot(xi.coords()).abs() - 1.0).abs() < 1e-12);
        let inner = SubspaceBasis::coordinate(3, &[0, 2]);
        let lifted = h.lift(&inner);
        assert!(lifted.orthonormality_error() < 1e-12);
        for r in lifted.rows() {
            assert!(xi.dot(r).abs() < 1e-12);
        }
    }
}
