//! Per-body cache shared by every check on that body: sample batches of
//! shadow measures, solved positions and minimized shadows. Each item is
//! computed once, on first use, from a seed derived from the body and the
//! item's own label, so the result does not depend on which check asks first.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::body::Body;
use super::compare::Side;
use super::SuiteConfig;
use crate::error::{GeomError, Result};
use crate::linalg::dot;
use crate::polytope::Polytope;
use crate::positions::{position_solver, PositionConfig, PositionResult};
use crate::quermass::omega;
use crate::sampling::{
    mc_estimate, refine_on_sphere, sample_grassmannian, sample_sphere, Direction, MinimizeOptions, RngSeed,
    SubspaceBasis,
};
use crate::zonotope::{projection_body, Zonotope};

/// Placements a check can ask for. `Identity` is the body as given.
pub const PLACEMENTS: [&str; 6] = ["identity", "min-surface", "isotropic", "john", "lowner", "min-mean-width"];

/// Hyperplane shadows in uniformly random directions.
#[derive(Debug, Clone)]
pub struct SphereBatch {
    pub dirs: Vec<Direction>,
    pub volume: Vec<f64>,
    pub surface: Vec<f64>,
}

/// Shadows on Haar-random k-dimensional subspaces; no surface for k = 1.
#[derive(Debug, Clone)]
pub struct GrassBatch {
    pub frames: Vec<SubspaceBasis>,
    pub volume: Vec<f64>,
    pub surface: Option<Vec<f64>>,
}

type Cell<T> = OnceLock<Result<T>>;

fn get<'a, T>(cell: &'a Cell<T>, f: impl FnOnce() -> Result<T>) -> Result<&'a T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// A body in one placement with its lazily drawn samples.
pub struct Sampled {
    pub poly: Polytope,
    seed: RngSeed,
    samples: usize,
    grass_samples: usize,
    sphere: Cell<SphereBatch>,
    grass: Vec<Cell<GrassBatch>>,
    min_surface: Cell<(Direction, f64)>,
}

impl Sampled {
    fn new(poly: Polytope, seed: RngSeed, cfg: &SuiteConfig) -> Self {
        let n = poly.dim();
        Sampled {
            poly,
            seed,
            samples: cfg.samples,
            grass_samples: cfg.grass_samples,
            sphere: OnceLock::new(),
            grass: (0..n).map(|_| OnceLock::new()).collect(),
            min_surface: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn volume(&self) -> f64 {
        self.poly.volume()
    }

    pub fn surface(&self) -> f64 {
        self.poly.surface_area()
    }

    pub fn sphere(&self) -> Result<&SphereBatch> {
        get(&self.sphere, || {
            let dirs = sample_sphere(self.dim(), self.samples, self.seed.derive("sphere"))?;
            let (volume, surface) =
                dirs.par_iter().map(|xi| self.poly.hyperplane_shadow_measures(xi.coords())).unzip();
            Ok(SphereBatch { dirs, volume, surface })
        })
    }

    /// Batch on `G_{n,k}` for `1 <= k <= n - 2`.
    pub fn grass(&self, k: usize) -> Result<&GrassBatch> {
        let n = self.dim();
        if k == 0 || k + 2 > n {
            return Err(GeomError::InvalidDimension(format!("Grassmannian batch needs 1 <= k <= n - 2, got {k}")));
        }
        get(&self.grass[k], || {
            let frames = sample_grassmannian(n, k, self.grass_samples, self.seed.derive(&format!("grass-{k}")))?;
            if k == 1 {
                let volume = frames.par_iter().map(|f| self.poly.shadow_volume(f)).collect::<Result<_>>()?;
                return Ok(GrassBatch { frames, volume, surface: None });
            }
            let pairs: Vec<(f64, f64)> = frames.par_iter().map(|f| self.poly.shadow_measures(f)).collect::<Result<_>>()?;
            let (volume, surface) = pairs.into_iter().unzip();
            Ok(GrassBatch { frames, volume, surface: Some(surface) })
        })
    }

    /// Shadow volumes on `G_{n,k}`, `1 <= k <= n - 1`.
    pub fn shadow_volumes(&self, k: usize) -> Result<&[f64]> {
        if k + 1 == self.dim() {
            Ok(&self.sphere()?.volume)
        } else {
            Ok(&self.grass(k)?.volume)
        }
    }

    /// Shadow surface areas on `G_{n,k}`, `2 <= k <= n - 1`.
    pub fn shadow_surfaces(&self, k: usize) -> Result<&[f64]> {
        if k + 1 == self.dim() {
            return Ok(&self.sphere()?.surface);
        }
        self.grass(k)?
            .surface
            .as_deref()
            .ok_or_else(|| GeomError::InvalidDimension("surface area of one-dimensional shadows".into()))
    }

    /// The first `count` subspaces of the `G_{n,k}` batch.
    pub fn frames(&self, k: usize, count: usize) -> Result<Vec<SubspaceBasis>> {
        if k + 1 == self.dim() {
            Ok(self.sphere()?.dirs.iter().take(count).map(SubspaceBasis::hyperplane).collect())
        } else {
            Ok(self.grass(k)?.frames.iter().take(count).cloned().collect())
        }
    }

    /// Haar mean of `|P_F K|` over `G_{n,k}`.
    pub fn mean_shadow_volume(&self, k: usize) -> Result<Side> {
        Ok(mc_estimate(self.shadow_volumes(k)?)?.into())
    }

    /// Haar mean of `S(P_F K)` over `G_{n,k}`.
    pub fn mean_shadow_surface(&self, k: usize) -> Result<Side> {
        Ok(mc_estimate(self.shadow_surfaces(k)?)?.into())
    }

    /// `V_j(K)` for `1 <= j <= n`: exact for `j >= n - 1`, Kubota otherwise.
    pub fn quermass(&self, j: usize) -> Result<Side> {
        let n = self.dim();
        match j {
            _ if j == n => Ok(Side::exact(self.volume())),
            _ if j + 1 == n => Ok(Side::exact(self.surface() / n as f64)),
            _ => Ok(self.mean_shadow_volume(j)?.scale(omega(n) / omega(j))),
        }
    }

    /// Sphere mean of `V_j(P_{xi^perp} K)` for `1 <= j <= n - 2`, through the
    /// Haar mean of `|P_F K|` on `G_{n,j}`.
    pub fn mean_shadow_quermass(&self, j: usize) -> Result<Side> {
        let n = self.dim();
        Ok(self.mean_shadow_volume(j)?.scale(omega(n - 1) / omega(j)))
    }

    /// `min_xi S(P_{xi^perp} K)`, searched from the sample, the axes and the
    /// largest facet normals, then refined locally. Any value found bounds
    /// the true minimum from above.
    pub fn min_shadow_surface(&self) -> Result<&(Direction, f64)> {
        get(&self.min_surface, || {
            let batch = self.sphere()?;
            let f = |xi: &Direction| self.poly.hyperplane_shadow_surface(xi.coords());
            let mut starts = candidates(&self.poly, &batch.dirs, &batch.surface, f);
            starts.truncate(3);
            refine_best(starts, f)
        })
    }
}

/// Sample directions, coordinate axes and the 32 largest facet normals,
/// sorted by objective.
fn candidates(p: &Polytope, dirs: &[Direction], values: &[f64], f: impl Fn(&Direction) -> f64) -> Vec<(Direction, f64)> {
    let n = p.dim();
    let mut out: Vec<(Direction, f64)> = dirs.iter().cloned().zip(values.iter().copied()).collect();
    out.extend((0..n).map(|i| Direction::axis(n, i)).map(|d| {
        let v = f(&d);
        (d, v)
    }));
    let mut facets: Vec<_> = p.facets().iter().collect();
    facets.sort_by(|a, b| b.measure.total_cmp(&a.measure));
    out.extend(facets.into_iter().take(32).map(|fc| (fc.normal.clone(), f(&fc.normal))));
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    out
}

fn refine_best(starts: Vec<(Direction, f64)>, f: impl Fn(&Direction) -> f64) -> Result<(Direction, f64)> {
    let opts = MinimizeOptions { restarts: 1, step_tol: 1e-9, max_iters: 150 };
    let mut best = starts.first().cloned().ok_or(GeomError::EmptyInput)?;
    for (d, _) in &starts {
        let (x, v) = refine_on_sphere(&f, d, &opts)?;
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

/// A solved position and the positioned body `T K + b`.
pub struct Placed {
    pub result: PositionResult,
    pub body: Sampled,
}

impl Placed {
    /// Fails unless the solver's residual certificate holds.
    pub fn certified(&self) -> Result<&Sampled> {
        let r = &self.result;
        let ok = match r.kind.as_str() {
            "isotropic" => r.residual < 1e-8,
            // the mean-width descent has no tolerance to meet
            "min-mean-width" => true,
            _ => r.converged,
        };
        if ok {
            Ok(&self.body)
        } else {
            Err(GeomError::NonConverged { iterations: r.iterations, residual: r.residual })
        }
    }
}

pub struct Context<'a> {
    pub body: &'a Body,
    pub cfg: &'a SuiteConfig,
    pub seed: RngSeed,
    pub base: Sampled,
    placed: Vec<Cell<Placed>>,
    projection_body: OnceLock<Zonotope>,
    min_projection: Cell<(Direction, f64)>,
    symmetric: OnceLock<bool>,
}

impl<'a> Context<'a> {
    pub fn new(body: &'a Body, cfg: &'a SuiteConfig) -> Self {
        let seed = RngSeed::new(cfg.seed, 0).derive(&format!("{}/{}", body.name, body.dim()));
        Context {
            body,
            cfg,
            seed,
            base: Sampled::new(body.poly.clone(), seed.derive("identity"), cfg),
            placed: (1..PLACEMENTS.len()).map(|_| OnceLock::new()).collect(),
            projection_body: OnceLock::new(),
            min_projection: OnceLock::new(),
            symmetric: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.body.dim()
    }

    /// Stream for a check's own randomness.
    pub fn seed_for(&self, id: &str) -> RngSeed {
        self.seed.derive(id)
    }

    /// Runs the named position solver once and caches the positioned body.
    pub fn placed(&self, kind: &str) -> Result<&Placed> {
        let slot = PLACEMENTS[1..]
            .iter()
            .position(|p| *p == kind)
            .ok_or_else(|| GeomError::Inadmissible(format!("unknown placement '{kind}'")))?;
        get(&self.placed[slot], || {
            let solver = position_solver(kind)?;
            let pc = PositionConfig {
                tol: self.cfg.position_tol,
                max_iter: self.cfg.position_max_iter,
                samples: self.cfg.mean_width_samples,
                steps: self.cfg.mean_width_steps,
                seed: self.seed.derive(kind),
            };
            let result = solver.solve(&self.body.poly, &pc)?.result;
            let poly = result.apply(&self.body.poly)?;
            let body = Sampled::new(poly, self.seed.derive(kind), self.cfg);
            Ok(Placed { result, body })
        })
    }

    /// The body in `kind`, or as given for `identity`; positions must hold
    /// their certificate.
    pub fn sampled(&self, kind: &str) -> Result<&Sampled> {
        if kind == "identity" {
            Ok(&self.base)
        } else {
            self.placed(kind)?.certified()
        }
    }

    /// `partial_K` from the certified minimal surface position.
    pub fn partial(&self) -> Result<f64> {
        let p = self.placed("min-surface")?;
        p.certified()?;
        Ok(p.result.objective)
    }

    pub fn projection_body(&self) -> &Zonotope {
        self.projection_body.get_or_init(|| projection_body(&self.body.poly))
    }

    /// `min_xi |P_{xi^perp} K| = min h_{Pi K}`: multistart search on the
    /// sphere plus local refinement of the best sampled directions.
    pub fn min_projection(&self) -> Result<&(Direction, f64)> {
        get(&self.min_projection, || {
            let gens = self.projection_body().generators().to_vec();
            let h = |xi: &Direction| gens.iter().map(|g| dot(g, xi.coords()).abs()).sum::<f64>();
            let batch = self.base.sphere()?;
            let mut starts = candidates(&self.body.poly, &batch.dirs, &batch.volume, h);
            starts.truncate(3);
            let n = self.n();
            // cheap objective: a full multistart as well
            let restarts = if gens.len() <= 64 { 16 * n } else { 2 * n };
            let opts = MinimizeOptions { restarts, step_tol: 1e-10, max_iters: 2000 };
            let global = crate::sampling::minimize_on_sphere(h, n, &opts, self.seed.derive("min-projection"))?;
            starts.push(global);
            refine_best(starts, h)
        })
    }

    pub fn is_symmetric(&self) -> bool {
        *self.symmetric.get_or_init(|| {
            let p = &self.body.poly;
            let c = p.centroid_and_covariance().0;
            let tol = 1e-9 * p.scale();
            let vs = p.vertices();
            vs.iter().all(|v| {
                vs.iter().any(|w| v.iter().zip(w).zip(&c).all(|((a, b), ci)| (a + b - 2.0 * ci).abs() <= tol))
            })
        })
    }

    /// Placements at which the positioned-body checks run; Löwner only
    /// for centrally symmetric bodies.
    pub fn classical_placements(&self) -> Vec<&'static str> {
        let mut out = vec!["min-surface", "isotropic", "john"];
        if self.is_symmetric() {
            out.push("lowner");
        }
        out
    }
}
