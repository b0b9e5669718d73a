//! The classical positions of a convex body as optimizers over GL(n), each
//! with a residual certificate, plus the parameters they define.
//!
//! Solvers share the [`PositionSolver`] trait and are looked up by name, so
//! the harness and the command line select them from configuration.

mod ellipsoids;
mod mean_width;
mod surface;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{matrix_rows, rows_to_matrix, sym_apply};
use crate::polytope::Polytope;
use crate::quermass::omega;
use crate::sampling::RngSeed;

pub use ellipsoids::{john_position, lowner_position};
pub use mean_width::min_mean_width_position;
pub use surface::{minimal_surface_parameter, minimal_surface_position};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionResult {
    pub kind: String,
    /// Row-major `n x n` matrix `T`; the positioned body is `T K + translation`.
    pub transform: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
    pub residual: f64,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after each accepted step, when the solver records one.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<f64>,
}

impl PositionResult {
    pub fn transform_matrix(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.transform, self.transform.len())
    }

    /// `T K + translation`.
    pub fn apply(&self, p: &Polytope) -> Result<Polytope> {
        p.transform(&self.transform_matrix())?.translate(&self.translation)
    }

    /// Turns a non-converged result into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(GeomError::NonConverged { iterations: self.iterations, residual: self.residual })
        }
    }
}

/// `E = {x : (x - c)^T shape^{-1} (x - c) <= 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ellipsoid {
    pub shape: Vec<Vec<f64>>,
    pub center: Vec<f64>,
}

impl Ellipsoid {
    pub fn shape_matrix(&self) -> DMatrix<f64> {
        rows_to_matrix(&self.shape, self.center.len())
    }

    pub fn volume(&self) -> f64 {
        let n = self.center.len();
        omega(n) * self.shape_matrix().determinant().max(0.0).sqrt()
    }

    /// Semi-axis lengths in increasing order.
    pub fn semi_axes(&self) -> Vec<f64> {
        let mut ax: Vec<f64> =
            self.shape_matrix().symmetric_eigen().eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
        ax.sort_by(f64::total_cmp);
        ax
    }
}

/// A solved position: the certificate, plus the ellipsoid or the scalar
/// parameter the position defines when there is one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Position {
    pub result: PositionResult,
    pub ellipsoid: Option<Ellipsoid>,
    pub parameter: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub samples: usize,
    pub steps: usize,
    pub seed: RngSeed,
}

impl Default for PositionConfig {
    fn default() -> Self {
        PositionConfig { tol: 1e-6, max_iter: 500, samples: 4000, steps: 60, seed: RngSeed::new(0, 0) }
    }
}

pub trait PositionSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, p: &Polytope, cfg: &PositionConfig) -> Result<Position>;
}

struct MinSurface;
struct Isotropic;
struct John;
struct Lowner;
struct MinMeanWidth;

impl PositionSolver for MinSurface {
    fn name(&self) -> &'static str {
        "min-surface"
    }
    fn solve(&self, p: &Polytope, cfg: &PositionConfig) -> Result<Position> {
        let (result, partial) = minimal_surface_position(p, cfg.tol, cfg.max_iter)?;
        Ok(Position { result, ellipsoid: None, parameter: Some(partial) })
    }
}

impl PositionSolver for Isotropic {
    fn name(&self) -> &'static str {
        "isotropic"
    }
    fn solve(&self, p: &Polytope, _cfg: &PositionConfig) -> Result<Position> {
        let (result, l) = isotropic_position(p)?;
        Ok(Position { result, ellipsoid: None, parameter: Some(l) })
    }
}

impl PositionSolver for John {
    fn name(&self) -> &'static str {
        "john"
    }
    fn solve(&self, p: &Polytope, cfg: &PositionConfig) -> Result<Position> {
        let (result, e) = john_position(p, cfg.tol.min(1e-9))?;
        Ok(Position { result, ellipsoid: Some(e), parameter: None })
    }
}

impl PositionSolver for Lowner {
    fn name(&self) -> &'static str {
        "lowner"
    }
    fn solve(&self, p: &Polytope, cfg: &PositionConfig) -> Result<Position> {
        let (result, e) = lowner_position(p, cfg.tol.min(1e-7))?;
        Ok(Position { result, ellipsoid: Some(e), parameter: None })
    }
}

impl PositionSolver for MinMeanWidth {
    fn name(&self) -> &'static str {
        "min-mean-width"
    }
    fn solve(&self, p: &Polytope, cfg: &PositionConfig) -> Result<Position> {
        let result = min_mean_width_position(p, cfg.samples, cfg.steps, cfg.seed)?;
        let w = result.objective;
        Ok(Position { result, ellipsoid: None, parameter: Some(w) })
    }
}

/// All registered solvers, in a fixed order.
pub fn position_solvers() -> Vec<Box<dyn PositionSolver>> {
    vec![Box::new(MinSurface), Box::new(Isotropic), Box::new(John), Box::new(Lowner), Box::new(MinMeanWidth)]
}

pub fn position_solver(name: &str) -> Result<Box<dyn PositionSolver>> {
    position_solvers().into_iter().find(|s| s.name() == name).ok_or_else(|| {
        let known: Vec<_> = position_solvers().iter().map(|s| s.name()).collect();
        GeomError::Inadmissible(format!("unknown position '{name}' (known: {})", known.join(", ")))
    })
}

pub(crate) fn det_normalize(t: DMatrix<f64>) -> DMatrix<f64> {
    let n = t.nrows() as f64;
    let d = t.determinant().abs();
    t / d.powf(1.0 / n)
}

fn result(kind: &str, t: &DMatrix<f64>, translation: Vec<f64>, residual: f64, objective: f64, iterations: usize) -> PositionResult {
    PositionResult {
        kind: kind.into(),
        transform: matrix_rows(t),
        translation,
        residual,
        objective,
        iterations,
        converged: true,
        trace: Vec::new(),
    }
}

/// Centroid at the origin, covariance `L_K^2 I`, volume one. Returns the
/// result and `L_K`.
pub fn isotropic_position(p: &Polytope) -> Result<(PositionResult, f64)> {
    let n = p.dim();
    let (c, cov) = p.centroid_and_covariance();
    let w = sym_apply(&cov, |l| 1.0 / l.sqrt());
    let scale = (w.determinant().abs() * p.volume()).powf(-1.0 / n as f64);
    let t = w * scale;
    let shift: Vec<f64> = (-(&t * DVector::from_column_slice(&c))).iter().copied().collect();
    let positioned = p.transform(&t)?.translate(&shift)?;
    let (_, cov_t) = positioned.centroid_and_covariance();
    let l = cov_t.determinant().powf(1.0 / (2 * n) as f64);
    let residual = (cov_t / (l * l) - DMatrix::identity(n, n)).norm();
    Ok((result("isotropic", &t, shift, residual, l, 1), l))
}

/// `vr(K) = (|K| / |E_John|)^{1/n}`.
pub fn volume_ratio(p: &Polytope) -> Result<f64> {
    let (_, e) = john_position(p, 1e-9)?;
    Ok((p.volume() / e.volume()).powf(1.0 / p.dim() as f64))
}

/// `ovr(K) = vr(K°)`; needs the origin in the interior.
pub fn outer_volume_ratio(p: &Polytope) -> Result<f64> {
    volume_ratio(&p.polar()?)
}
