use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::{det_normalize, result, PositionResult};
use crate::error::Result;
use crate::linalg::{sym_apply, sym_spectral_norm};
use crate::polytope::Polytope;
use crate::sampling::{sample_sphere, RngSeed};

/// Sample mean of `h_{TK}` together with the maximizing vertex of `T K`
/// for each direction.
fn evaluate(verts: &[DVector<f64>], t: &DMatrix<f64>, dirs: &[DVector<f64>]) -> (f64, Vec<DVector<f64>>) {
    let moved: Vec<DVector<f64>> = verts.iter().map(|v| t * v).collect();
    let best: Vec<(f64, usize)> = dirs
        .par_iter()
        .map(|th| {
            moved
                .iter()
                .enumerate()
                .map(|(i, v)| (th.dot(v), i))
                .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a })
        })
        .collect();
    let w = best.iter().map(|b| b.0).sum::<f64>() / dirs.len() as f64;
    (w, best.into_iter().map(|(_, i)| moved[i].clone()).collect())
}

/// Stochastic descent of `T -> w(T K)` over SL(n) along `exp` of the
/// traceless symmetric part of the gradient, with one fixed direction
/// sample for every step. The residual is the spectral deviation of
/// `n E[theta theta^T h(theta)] / w` from the identity on that sample.
pub fn min_mean_width_position(p: &Polytope, samples: usize, steps: usize, seed: RngSeed) -> Result<PositionResult> {
    let n = p.dim();
    let (c, _) = p.centroid_and_covariance();
    let verts: Vec<DVector<f64>> =
        p.vertices().iter().map(|v| DVector::from_iterator(n, v.iter().zip(&c).map(|(x, c)| x - c))).collect();
    let dirs: Vec<DVector<f64>> = sample_sphere(n, samples, seed.derive("min-mean-width"))?
        .into_iter()
        .map(|d| DVector::from_vec(d.into_inner()))
        .collect();
    let identity = DMatrix::<f64>::identity(n, n);
    let mut t = identity.clone();
    let (mut w, mut argmax) = evaluate(&verts, &t, &dirs);
    let mut trace = vec![w];
    let mut eta: f64 = 0.5;
    let mut iterations = 0;
    for _ in 0..steps {
        let mut d = DMatrix::zeros(n, n);
        for (th, v) in dirs.iter().zip(&argmax) {
            d.ger(1.0, th, v, 1.0);
        }
        d /= dirs.len() as f64;
        let sym = (&d + d.transpose()) * 0.5;
        let e = -(sym - &identity * (d.trace() / n as f64));
        let size = e.norm();
        if size < 1e-14 * w {
            break;
        }
        let e = e / size;
        let mut accepted = false;
        for _ in 0..30 {
            let candidate = det_normalize(sym_apply(&(&e * eta), f64::exp) * &t);
            let (wc, ac) = evaluate(&verts, &candidate, &dirs);
            if wc < w {
                t = candidate;
                w = wc;
                argmax = ac;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
        trace.push(w);
        iterations += 1;
        eta = (eta * 2.0).min(0.5);
    }
    let mut moment = DMatrix::zeros(n, n);
    for (th, v) in dirs.iter().zip(&argmax) {
        moment.ger(th.dot(v), th, th, 1.0);
    }
    moment /= dirs.len() as f64;
    let residual = sym_spectral_norm(&(moment * (n as f64 / w) - &identity));
    let shift: Vec<f64> = (-(&t * DVector::from_column_slice(&c))).iter().copied().collect();
    let mut r = result("min-mean-width", &t, shift, residual, w, iterations);
    r.trace = trace;
    Ok(r)
}
