use nalgebra::{DMatrix, DVector};

use super::{det_normalize, result, Ellipsoid, PositionResult};
use crate::error::{GeomError, Result};
use crate::linalg::{matrix_rows, sym_apply};
use crate::polytope::Polytope;

const KHACHIYAN_CAP: usize = 200_000;
const NEWTON_CAP: usize = 200;
const OUTER_CAP: usize = 40;

fn ellipsoid_result(kind: &str, e: &Ellipsoid, residual: f64, iterations: usize, converged: bool) -> PositionResult {
    let s = e.shape_matrix();
    let t = det_normalize(sym_apply(&s, |l| 1.0 / l.sqrt()));
    let shift: Vec<f64> = (-(&t * DVector::from_column_slice(&e.center))).iter().copied().collect();
    let mut r = result(kind, &t, shift, residual, e.volume(), iterations);
    r.converged = converged;
    r
}

/// Minimum-volume ellipsoid containing the vertices, by Khachiyan's
/// coordinate ascent with Todd-Yildirim away steps. `tol` bounds the
/// relative excess of the largest lifted Mahalanobis norm over `n + 1`.
pub fn lowner_position(p: &Polytope, tol: f64) -> Result<(PositionResult, Ellipsoid)> {
    let n = p.dim();
    let pts: Vec<DVector<f64>> = p
        .vertices()
        .iter()
        .map(|v| DVector::from_iterator(n + 1, v.iter().copied().chain(std::iter::once(1.0))))
        .collect();
    let m = pts.len();
    let lifted = (n + 1) as f64;
    let mut u = vec![1.0 / m as f64; m];
    let mut iterations = 0;
    let mut gap = f64::INFINITY;
    while iterations < KHACHIYAN_CAP {
        let mut x = DMatrix::zeros(n + 1, n + 1);
        for (q, w) in pts.iter().zip(&u) {
            x.ger(*w, q, q, 1.0);
        }
        let chol = x.cholesky().ok_or(GeomError::DegenerateInput { affine_dim: n - 1, expected: n })?;
        let mahal: Vec<f64> = pts.iter().map(|q| q.dot(&chol.solve(q))).collect();
        let (j, mj) = mahal.iter().copied().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        let (k, mk) = mahal
            .iter()
            .copied()
            .enumerate()
            .filter(|(i, _)| u[*i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let up = mj / lifted - 1.0;
        let down = 1.0 - mk / lifted;
        gap = up.max(down);
        if gap < tol {
            break;
        }
        if up >= down {
            let step = (mj - lifted) / (lifted * (mj - 1.0));
            u.iter_mut().for_each(|w| *w *= 1.0 - step);
            u[j] += step;
        } else {
            let step = ((lifted - mk) / (lifted * (mk - 1.0))).min(u[k] / (1.0 - u[k]));
            u.iter_mut().for_each(|w| *w *= 1.0 + step);
            u[k] = (u[k] - step).max(0.0);
        }
        iterations += 1;
    }
    let mut c = DVector::zeros(n);
    let mut second = DMatrix::zeros(n, n);
    for (v, w) in p.vertices().iter().zip(&u) {
        let v = DVector::from_column_slice(v);
        c += &v * *w;
        second.ger(*w, &v, &v, 1.0);
    }
    let shape = (second - &c * c.transpose()) * n as f64;
    let e = Ellipsoid { shape: matrix_rows(&shape), center: c.iter().copied().collect() };
    let converged = gap < tol;
    Ok((ellipsoid_result("lowner", &e, gap, iterations, converged), e))
}

/// Inscribed ellipsoid `{A x + d : |x| <= 1}` of maximal volume for the
/// facet description `<u_i, x> <= b_i`.
struct JohnProblem {
    n: usize,
    normals: Vec<DVector<f64>>,
    offsets: Vec<f64>,
    basis: Vec<(usize, usize)>,
    free_center: bool,
}

struct Derivatives {
    value: f64,
    grad: DVector<f64>,
    hess: DMatrix<f64>,
}

impl JohnProblem {
    fn nvars(&self) -> usize {
        self.basis.len() + if self.free_center { self.n } else { 0 }
    }

    fn unpack(&self, x: &DVector<f64>) -> (DMatrix<f64>, DVector<f64>) {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (p, &(k, l)) in self.basis.iter().enumerate() {
            a[(k, l)] = x[p];
            a[(l, k)] = x[p];
        }
        let d = if self.free_center {
            DVector::from_iterator(self.n, x.iter().skip(self.basis.len()).copied())
        } else {
            DVector::zeros(self.n)
        };
        (a, d)
    }

    fn log_det(a: &DMatrix<f64>) -> Option<f64> {
        let chol = a.clone().cholesky()?;
        Some(2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>())
    }

    fn value(&self, x: &DVector<f64>, mu: f64) -> Option<f64> {
        let (a, d) = self.unpack(x);
        let mut f = -Self::log_det(&a)?;
        for (u, b) in self.normals.iter().zip(&self.offsets) {
            let s = b - u.dot(&d) - (&a * u).norm();
            if s <= 0.0 {
                return None;
            }
            f -= mu * s.ln();
        }
        Some(f)
    }

    /// `E_p u` for every basis element, as the columns of an `n x N` matrix.
    fn basis_images(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.n, self.basis.len());
        for (p, &(k, l)) in self.basis.iter().enumerate() {
            if k == l {
                c[(k, p)] = u[k];
            } else {
                c[(k, p)] = u[l];
                c[(l, p)] = u[k];
            }
        }
        c
    }

    fn derivatives(&self, x: &DVector<f64>, mu: f64) -> Option<Derivatives> {
        let value = self.value(x, mu)?;
        let (a, d) = self.unpack(x);
        let nb = self.basis.len();
        let nv = self.nvars();
        let mut grad = DVector::zeros(nv);
        let mut hess = DMatrix::zeros(nv, nv);

        let a_inv = a.clone().try_inverse()?;
        let w: Vec<DMatrix<f64>> = self
            .basis
            .iter()
            .map(|&(k, l)| {
                let mut e = DMatrix::zeros(self.n, self.n);
                e[(k, l)] = 1.0;
                e[(l, k)] = 1.0;
                &a_inv * e
            })
            .collect();
        for p in 0..nb {
            grad[p] = -w[p].trace();
            for q in p..nb {
                let h = w[p].component_mul(&w[q].transpose()).sum();
                hess[(p, q)] = h;
                hess[(q, p)] = h;
            }
        }

        let mut gs = DVector::zeros(nv);
        for (u, b) in self.normals.iter().zip(&self.offsets) {
            let v = &a * u;
            let r = v.norm();
            let s = b - u.dot(&d) - r;
            let c = self.basis_images(u);
            let cv = c.transpose() * &v;
            for p in 0..nb {
                gs[p] = -cv[p] / r;
            }
            if self.free_center {
                for i in 0..self.n {
                    gs[nb + i] = -u[i];
                }
            }
            grad.axpy(-mu / s, &gs, 1.0);
            hess.ger(mu / (s * s), &gs, &gs, 1.0);
            // curvature of the norm term
            let ctc = c.transpose() * &c;
            let coef = mu / (s * r);
            for p in 0..nb {
                for q in 0..nb {
                    hess[(p, q)] += coef * (ctc[(p, q)] - cv[p] * cv[q] / (r * r));
                }
            }
        }
        Some(Derivatives { value, grad, hess })
    }

    fn newton_direction(hess: &DMatrix<f64>, grad: &DVector<f64>) -> Option<DVector<f64>> {
        let mut ridge = 0.0;
        let scale = hess.diagonal().amax().max(1e-300);
        for _ in 0..20 {
            let h = hess + DMatrix::identity(hess.nrows(), hess.ncols()) * ridge;
            if let Some(ch) = h.cholesky() {
                return Some(-ch.solve(grad));
            }
            ridge = if ridge == 0.0 { 1e-14 * scale } else { ridge * 10.0 };
        }
        None
    }

    /// Damped Newton on the barrier at fixed `mu`; returns the step count.
    fn center(&self, x: &mut DVector<f64>, mu: f64) -> usize {
        for it in 0..NEWTON_CAP {
            let Some(der) = self.derivatives(x, mu) else { return it };
            let Some(dir) = Self::newton_direction(&der.hess, &der.grad) else { return it };
            let decrement = -der.grad.dot(&dir);
            if decrement < 1e-20 {
                return it;
            }
            let mut t = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let trial = &*x + &dir * t;
                if let Some(f) = self.value(&trial, mu) {
                    if f <= der.value - 0.25 * t * decrement {
                        *x = trial;
                        moved = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !moved || decrement < 1e-14 {
                return it + 1;
            }
        }
        NEWTON_CAP
    }
}

fn is_centrally_symmetric(p: &Polytope) -> bool {
    let tol = 1e-9 * p.scale();
    let verts = p.vertices();
    verts.iter().all(|v| verts.iter().any(|w| v.iter().zip(w).all(|(a, b)| (a + b).abs() <= tol)))
}

/// Maximum-volume inscribed ellipsoid by a log-barrier path on
/// `log det A` with Newton centering. `tol` bounds `m * mu`, the barrier
/// gap in `log det`.
pub fn john_position(p: &Polytope, tol: f64) -> Result<(PositionResult, Ellipsoid)> {
    let n = p.dim();
    let normals: Vec<DVector<f64>> = p.facets().iter().map(|f| DVector::from_column_slice(f.normal.coords())).collect();
    let offsets: Vec<f64> = p.facets().iter().map(|f| f.offset).collect();
    let m = normals.len();
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|k| (k..n).map(move |l| (k, l))).collect();
    let free_center = !is_centrally_symmetric(p);
    let (r0, c0) = if free_center {
        p.inradius()?
    } else {
        (offsets.iter().copied().fold(f64::INFINITY, f64::min), vec![0.0; n])
    };
    if !(r0 > 0.0) {
        return Err(GeomError::DegenerateInput { affine_dim: n - 1, expected: n });
    }
    let problem = JohnProblem { n, normals, offsets, basis, free_center };
    let mut x = DVector::zeros(problem.nvars());
    for (i, &(k, l)) in problem.basis.iter().enumerate() {
        if k == l {
            x[i] = 0.5 * r0;
        }
    }
    if free_center {
        for i in 0..n {
            x[problem.basis.len() + i] = c0[i];
        }
    }
    let mut mu = 1.0 / m as f64;
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..OUTER_CAP {
        iterations += problem.center(&mut x, mu);
        if m as f64 * mu < tol {
            converged = true;
            break;
        }
        mu *= 0.1;
    }
    let (a, d) = problem.unpack(&x);
    let shape = &a * &a;
    let e = Ellipsoid { shape: matrix_rows(&shape), center: d.iter().copied().collect() };
    Ok((ellipsoid_result("john", &e, m as f64 * mu, iterations, converged), e))
}
