//! (1+1) evolutionary search for bodies that push a check's ratio towards
//! its bound. Evidence only: nothing here certifies an extremum.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::BodySpec;
use crate::error::{GeomError, Result};
use crate::polytope::{convex_hull, cube, random_hull, Polytope};
use crate::positions::minimal_surface_position;
use crate::quermass::{b_constant, omega};
use crate::sampling::{minimize_on_grassmannian, refine_on_sphere, sample_sphere, Direction, MinimizeOptions, RngSeed};
use crate::zonotope::{cube_zonotope, random_zonotope, Zonotope};

pub const SEARCH_IDS: [&str; 5] = ["GHP", "T-HYPER-1", "T-HYPER-2", "T-ZON-2", "T-LOWER-MIN"];
pub const SEARCH_FAMILIES: [&str; 4] = ["random-hull", "random-zonotope", "perturbed-cube", "unconditional-hull"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub id: String,
    pub family: String,
    pub n: usize,
    /// Objective evaluations, including the starting body.
    pub budget: usize,
    pub seed: u64,
    /// Directions used to estimate sphere extrema of a candidate.
    pub samples: usize,
    /// Initial mutation scale.
    pub step: f64,
}

impl SearchConfig {
    pub fn new(id: &str, family: &str, n: usize) -> Self {
        SearchConfig { id: id.into(), family: family.into(), n, budget: 200, seed: 0, samples: 2000, step: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchStep {
    pub evaluation: usize,
    pub ratio: f64,
    pub body: BodySpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchTrace {
    pub config: SearchConfig,
    /// True when larger ratios are better.
    pub maximize: bool,
    /// Every improvement of the best-so-far body, in order.
    pub improvements: Vec<SearchStep>,
    pub best: SearchStep,
    pub evaluations: usize,
    pub rejected: usize,
    /// The best ratio against an alternative constant, when one is of
    /// interest for the family; otherwise the ratio itself.
    pub reported: Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reported {
    pub label: String,
    pub value: f64,
}

#[derive(Clone)]
enum Shape {
    Points(Vec<Vec<f64>>),
    /// Base points reflected through every coordinate hyperplane.
    Unconditional(Vec<Vec<f64>>),
    Generators(Vec<Vec<f64>>),
}

impl Shape {
    fn params(&mut self) -> &mut Vec<Vec<f64>> {
        match self {
            Shape::Points(v) | Shape::Unconditional(v) | Shape::Generators(v) => v,
        }
    }

    fn build(&self, n: usize) -> Result<(Polytope, Option<Zonotope>, BodySpec)> {
        match self {
            Shape::Points(pts) => {
                let p = convex_hull(pts, n)?;
                let spec = BodySpec::vrep("candidate", p.vertices().to_vec());
                Ok((p, None, spec))
            }
            Shape::Unconditional(base) => {
                let mut pts = Vec::with_capacity(base.len() << n);
                for b in base {
                    for mask in 0..1usize << n {
                        pts.push(b.iter().enumerate().map(|(i, x)| if mask >> i & 1 == 1 { -x } else { *x }).collect());
                    }
                }
                let p = convex_hull(&pts, n)?;
                let spec = BodySpec::vrep("candidate", p.vertices().to_vec());
                Ok((p, None, spec))
            }
            Shape::Generators(g) => {
                let z = Zonotope::centered(g.clone())?;
                let p = z.to_polytope()?;
                let spec = BodySpec::zonotope("candidate", &z);
                Ok((p, Some(z), spec))
            }
        }
    }
}

fn start(id: &str, family: &str, n: usize, seed: u64) -> Result<Shape> {
    let zonoid_only = matches!(id, "T-HYPER-2" | "T-ZON-2");
    let shape = match family {
        "random-hull" if !zonoid_only => Shape::Points(random_hull(n, 4 * n, seed)?.vertices().to_vec()),
        "random-zonotope" => Shape::Generators(random_zonotope(n, n + 3, seed)?.generators().to_vec()),
        "perturbed-cube" if zonoid_only => Shape::Generators(cube_zonotope(n).generators().to_vec()),
        "perturbed-cube" => Shape::Points(cube(n).vertices().to_vec()),
        "unconditional-hull" if !zonoid_only => {
            let mut rng = RngSeed::new(seed, 0).derive("unconditional-hull").rng();
            let base = (0..n + 2)
                .map(|_| (0..n).map(|_| 0.2 + rng.gen::<f64>()).collect())
                .collect();
            Shape::Unconditional(base)
        }
        _ => {
            return Err(GeomError::Inadmissible(format!(
                "family '{family}' is not searchable for {id} (zonoid checks need random-zonotope or perturbed-cube)"
            )))
        }
    };
    Ok(shape)
}

/// Candidate directions: the sample, the axes and the facet normals.
fn directions(p: &Polytope, sample: &[Direction]) -> Vec<Direction> {
    let n = p.dim();
    let mut out = sample.to_vec();
    out.extend((0..n).map(|i| Direction::axis(n, i)));
    out.extend(p.facets().iter().map(|f| f.normal.clone()));
    out
}

fn min_shadow_surface(p: &Polytope, sample: &[Direction]) -> Result<f64> {
    let f = |xi: &Direction| p.hyperplane_shadow_surface(xi.coords());
    let best = directions(p, sample)
        .into_iter()
        .map(|d| {
            let v = f(&d);
            (d, v)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(GeomError::EmptyInput)?;
    let opts = MinimizeOptions { restarts: 1, step_tol: 1e-8, max_iters: 60 };
    Ok(refine_on_sphere(f, &best.0, &opts)?.1)
}

fn objective(id: &str, p: &Polytope, z: Option<&Zonotope>, sample: &[Direction], seed: RngSeed) -> Result<f64> {
    let n = p.dim();
    let nf = n as f64;
    let (v, s) = (p.volume(), p.surface_area());
    match id {
        "GHP" => {
            let rhs = 2.0 * (nf - 1.0) / nf * s / v;
            let worst = directions(p, sample)
                .iter()
                .map(|xi| {
                    let (pv, ps) = p.hyperplane_shadow_measures(xi.coords());
                    ps / pv
                })
                .fold(0.0, f64::max);
            Ok(worst / rhs)
        }
        "T-HYPER-1" => {
            let (_, partial) = minimal_surface_position(p, 1e-6, 500)?;
            let c = 2.0 * b_constant(n) * partial / (nf * omega(n).powf(1.0 / nf));
            Ok(v.powf(1.0 / nf) * min_shadow_surface(p, sample)? / (c * s))
        }
        "T-HYPER-2" => Ok(v.powf(1.0 / nf) * min_shadow_surface(p, sample)? / (2.0 * b_constant(n) * s)),
        "T-ZON-2" => {
            let z = z.ok_or_else(|| GeomError::Inadmissible("T-ZON-2 needs a zonotope".into()))?;
            let opts = MinimizeOptions { restarts: 4, step_tol: 1e-8, max_iters: 200 };
            let mut worst: f64 = 0.0;
            for k in 2..n {
                let f = |f: &crate::sampling::SubspaceBasis| z.projection_volume(f).unwrap_or(f64::INFINITY);
                let (_, min) = minimize_on_grassmannian(f, n, k, &opts, seed.derive(&k.to_string()))?;
                let rhs = nf * b_constant(n).powi((n - k) as i32) / k as f64 * v.powf(k as f64 / nf);
                worst = worst.max(min / rhs);
            }
            Ok(worst)
        }
        "T-LOWER-MIN" => {
            let (res, partial) = minimal_surface_position(p, 1e-6, 500)?;
            let q = res.require_converged()?.apply(p)?;
            let (qv, qs) = (q.volume(), q.surface_area());
            let c = (nf - 1.0) * omega(n).powf(1.0 / (nf - 1.0))
                / (4.0 * nf.powf((nf - 2.0) / (nf - 1.0)) * partial.powf(1.0 / (nf - 1.0)));
            Ok(qv.powf(1.0 / nf) * min_shadow_surface(&q, sample)? / (c * qs))
        }
        _ => Err(GeomError::Inadmissible(format!("no search objective for '{id}' (known: {})", SEARCH_IDS.join(", ")))),
    }
}

/// Elitist (1+1) search with the 1/5 success rule on the mutation scale.
pub fn extremizer_search(cfg: &SearchConfig) -> Result<SearchTrace> {
    if !SEARCH_IDS.contains(&cfg.id.as_str()) {
        return Err(GeomError::Inadmissible(format!("no search objective for '{}' (known: {})", cfg.id, SEARCH_IDS.join(", "))));
    }
    if !SEARCH_FAMILIES.contains(&cfg.family.as_str()) {
        return Err(GeomError::Inadmissible(format!("unknown family '{}' (known: {})", cfg.family, SEARCH_FAMILIES.join(", "))));
    }
    let n = cfg.n;
    let maximize = cfg.id != "T-LOWER-MIN";
    let root = RngSeed::new(cfg.seed, 0).derive(&format!("search/{}/{}/{n}", cfg.id, cfg.family));
    let sample = sample_sphere(n, cfg.samples, root.derive("directions"))?;
    let mut rng = root.derive("mutations").rng();
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };

    let mut current = start(&cfg.id, &cfg.family, n, cfg.seed)?;
    let (p, z, spec) = current.build(n)?;
    let ratio = objective(&cfg.id, &p, z.as_ref(), &sample, root.derive("objective"))?;
    let mut best = SearchStep { evaluation: 0, ratio, body: spec };
    let mut improvements = vec![best.clone()];
    let mut step = cfg.step;
    let mut rejected = 0;
    for evaluation in 1..cfg.budget.max(1) {
        let mut cand = current.clone();
        let scale = step;
        for x in cand.params().iter_mut().flatten() {
            let g: f64 = rng.sample(StandardNormal);
            *x += scale * g;
        }
        let eval = cand.build(n).and_then(|(p, z, spec)| {
            Ok((objective(&cfg.id, &p, z.as_ref(), &sample, root.derive("objective"))?, spec))
        });
        match eval {
            Ok((r, spec)) if r.is_finite() && better(r, best.ratio) => {
                current = cand;
                best = SearchStep { evaluation, ratio: r, body: spec };
                improvements.push(best.clone());
                step *= 1.5;
            }
            Ok(_) => step *= 1.5f64.powf(-0.25),
            Err(_) => {
                rejected += 1;
                step *= 1.5f64.powf(-0.25);
            }
        }
    }
    let reported = if cfg.id == "GHP" && cfg.family == "random-zonotope" {
        Reported { label: "twice the ratio, against the half constant".into(), value: 2.0 * best.ratio }
    } else {
        Reported { label: "ratio".into(), value: best.ratio }
    };
    Ok(SearchTrace { config: cfg.clone(), maximize, improvements, best, evaluations: cfg.budget.max(1), rejected, reported })
}
