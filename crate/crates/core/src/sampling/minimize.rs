//! Multi-start local search over S^{n-1} and G_{n,k}.
//!
//! Both manifolds are handled as sets of orthonormal k-frames (k = 1 for the
//! sphere). Each local run alternates a finite-difference gradient step with
//! an Armijo test and, when that fails at a kink of a piecewise-linear
//! objective, a compass poll along the tangent basis. The step length is
//! halved whenever neither move improves; a run stops once it drops below
//! `step_tol`.

use rand::Rng;

use super::grassmannian::haar_frame;
use super::{Direction, RngSeed, SubspaceBasis};
use crate::error::{GeomError, Result};
use crate::linalg::{gram_schmidt, orthonormal_complement};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub restarts: usize,
    pub step_tol: f64,
    pub max_iters: usize,
}

impl MinimizeOptions {
    /// `16 n` restarts, step tolerance 1e-10.
    pub fn for_dim(n: usize) -> Self {
        Self { restarts: 16 * n, step_tol: 1e-10, max_iters: 20_000 }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }
}

type Frame = Vec<Vec<f64>>;

fn retract(frame: &Frame, dir: &Frame, t: f64) -> Frame {
    let moved: Frame = frame
        .iter()
        .zip(dir)
        .map(|(r, d)| r.iter().zip(d).map(|(a, b)| a + t * b).collect())
        .collect();
    gram_schmidt(&moved).0
}

fn tangent_basis(frame: &Frame, n: usize) -> Vec<Frame> {
    let k = frame.len();
    let perp = orthonormal_complement(frame, n);
    let mut basis = Vec::with_capacity(k * perp.len());
    for i in 0..k {
        for w in &perp {
            let mut m = vec![vec![0.0; n]; k];
            m[i] = w.clone();
            basis.push(m);
        }
    }
    basis
}

fn combine(basis: &[Frame], coeffs: &[f64]) -> Frame {
    let mut out = basis[0].iter().map(|r| vec![0.0; r.len()]).collect::<Frame>();
    for (b, c) in basis.iter().zip(coeffs) {
        for (orow, brow) in out.iter_mut().zip(b) {
            for (o, x) in orow.iter_mut().zip(brow) {
                *o += c * x;
            }
        }
    }
    out
}

struct Evaluator<F> {
    objective: F,
}

impl<F: FnMut(&Frame) -> f64> Evaluator<F> {
    fn eval(&mut self, frame: &Frame) -> Result<f64> {
        let v = (self.objective)(frame);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeomError::ObjectiveError { direction: frame.concat(), value: v })
        }
    }
}

fn local_search<F: FnMut(&Frame) -> f64>(
    eval: &mut Evaluator<F>,
    start: Frame,
    n: usize,
    opts: &MinimizeOptions,
) -> Result<(Frame, f64)> {
    let mut x = start;
    let mut fx = eval.eval(&x)?;
    let mut step = 0.5_f64;
    let mut iters = 0;
    while step >= opts.step_tol && iters < opts.max_iters {
        iters += 1;
        let basis = tangent_basis(&x, n);
        let h = (step * 1e-2).clamp(1e-9, 1e-6);
        let mut grad = Vec::with_capacity(basis.len());
        for b in &basis {
            let fp = eval.eval(&retract(&x, b, h))?;
            let fm = eval.eval(&retract(&x, b, -h))?;
            grad.push((fp - fm) / (2.0 * h));
        }
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        let mut moved = false;
        if gnorm > 0.0 {
            let dir = combine(&basis, &grad.iter().map(|g| -g / gnorm).collect::<Vec<_>>());
            let cand = retract(&x, &dir, step);
            let fc = eval.eval(&cand)?;
            if fc < fx - 1e-4 * step * gnorm {
                x = cand;
                fx = fc;
                step = (step * 2.0).min(0.5);
                moved = true;
            }
        }
        if !moved {
            'poll: for b in &basis {
                for sign in [1.0, -1.0] {
                    let cand = retract(&x, b, sign * step);
                    let fc = eval.eval(&cand)?;
                    if fc < fx {
                        x = cand;
                        fx = fc;
                        moved = true;
                        break 'poll;
                    }
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok((x, fx))
}

fn multistart<F: FnMut(&Frame) -> f64>(
    objective: F,
    n: usize,
    k: usize,
    opts: &MinimizeOptions,
    seed: RngSeed,
) -> Result<(Frame, f64)> {
    let mut rng = seed.rng();
    let mut eval = Evaluator { objective };
    let mut best: Option<(Frame, f64)> = None;
    for _ in 0..opts.restarts.max(1) {
        let start = haar_frame(n, k, &mut rng).rows().to_vec();
        let (x, fx) = local_search(&mut eval, start, n, opts)?;
        if best.as_ref().map_or(true, |(_, b)| fx < *b) {
            best = Some((x, fx));
        }
        // keep the stream position independent of objective cost
        let _: u64 = rng.gen();
    }
    Ok(best.expect("at least one restart"))
}

/// Minimizes `objective` over the unit sphere in R^n.
pub fn minimize_on_sphere<F: FnMut(&Direction) -> f64>(
    mut objective: F,
    n: usize,
    opts: &MinimizeOptions,
    seed: RngSeed,
) -> Result<(Direction, f64)> {
    if n < 2 {
        return Err(GeomError::InvalidDimension(format!("sphere search needs n >= 2, got {n}")));
    }
    let (x, fx) = multistart(
        |f: &Frame| objective(&Direction::new(f[0].clone()).expect("unit row")),
        n,
        1,
        opts,
        seed,
    )?;
    Ok((Direction::new(x.into_iter().next().expect("one row"))?, fx))
}

/// Local search on the sphere from a given start; never returns a value
/// above `objective(start)`.
pub fn refine_on_sphere<F: FnMut(&Direction) -> f64>(
    mut objective: F,
    start: &Direction,
    opts: &MinimizeOptions,
) -> Result<(Direction, f64)> {
    let n = start.dim();
    let mut eval = Evaluator { objective: |f: &Frame| objective(&Direction::new(f[0].clone()).expect("unit row")) };
    let (x, fx) = local_search(&mut eval, vec![start.coords().to_vec()], n, opts)?;
    Ok((Direction::new(x.into_iter().next().expect("one row"))?, fx))
}

/// Minimizes `objective` over the Grassmannian G_{n,k}.
pub fn minimize_on_grassmannian<F: FnMut(&SubspaceBasis) -> f64>(
    mut objective: F,
    n: usize,
    k: usize,
    opts: &MinimizeOptions,
    seed: RngSeed,
) -> Result<(SubspaceBasis, f64)> {
    if k == 0 || k > n {
        return Err(GeomError::InvalidDimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let (x, fx) = multistart(
        |f: &Frame| objective(&SubspaceBasis::from_orthonormal_rows(f.clone(), n)),
        n,
        k,
        opts,
        seed,
    )?;
    Ok((SubspaceBasis::from_orthonormal_rows(x, n), fx))
}
