use nalgebra::{DMatrix, DVector};

use super::{det_normalize, result, PositionResult};
use crate::error::{GeomError, Result};
use crate::linalg::sym_apply;
use crate::polytope::Polytope;

const DAMPING: f64 = 0.5;

/// Second moment `sum a_i u_i u_i^T / S` of the surface measure of `T K`,
/// with the total `S(T K)`; `|det T| = 1` is assumed.
fn surface_moment(atoms: &[(DVector<f64>, f64)], t_inv_t: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
    let n = t_inv_t.nrows();
    let mut m = DMatrix::zeros(n, n);
    let mut total = 0.0;
    for (u, a) in atoms {
        let w = t_inv_t * u;
        let len = w.norm();
        let area = a * len;
        m.ger(area / (len * len), &w, &w, 1.0);
        total += area;
    }
    (m / total, total)
}

/// `S(K) / |K|^{(n-1)/n}` of the body as given.
pub fn minimal_surface_parameter(p: &Polytope) -> f64 {
    let n = p.dim() as f64;
    p.surface_area() / p.volume().powf((n - 1.0) / n)
}

/// Damped fixed-point iteration on the isotropy of the surface area
/// measure. Returns the result and `partial_K`. A run that hits `max_iter`
/// returns the best iterate with `converged = false`.
pub fn minimal_surface_position(p: &Polytope, tol: f64, max_iter: usize) -> Result<(PositionResult, f64)> {
    let n = p.dim();
    if !(tol > 0.0) {
        return Err(GeomError::Inadmissible(format!("tolerance must be positive, got {tol}")));
    }
    let atoms: Vec<(DVector<f64>, f64)> =
        p.facets().iter().map(|f| (DVector::from_column_slice(f.normal.coords()), f.measure)).collect();
    let identity = DMatrix::<f64>::identity(n, n);
    let mut t = identity.clone();
    let mut best: Option<(f64, DMatrix<f64>, f64, usize)> = None;
    let mut iterations = 0;
    let mut converged = false;
    loop {
        let t_inv_t = t.clone().try_inverse().ok_or(GeomError::SingularMatrix { det: t.determinant() })?.transpose();
        let (m, total) = surface_moment(&atoms, &t_inv_t);
        let residual = (&m * n as f64 - &identity).norm();
        if best.as_ref().is_none_or(|b| residual < b.0) {
            best = Some((residual, t.clone(), total, iterations));
        }
        if residual < tol {
            converged = true;
            break;
        }
        if iterations == max_iter {
            break;
        }
        let b = det_normalize(sym_apply(&(m * n as f64), |l| l.powf(DAMPING / 2.0)));
        t = det_normalize(b * t);
        iterations += 1;
    }
    let (residual, t, total, _) = best.expect("at least one iterate");
    let partial = total / p.volume().powf((n as f64 - 1.0) / n as f64);
    let c = DVector::from_column_slice(&p.centroid_and_covariance().0);
    let shift: Vec<f64> = (-(&t * c)).iter().copied().collect();
    let mut r = result("min-surface", &t, shift, residual, partial, iterations);
    r.converged = converged;
    Ok((r, partial))
}
