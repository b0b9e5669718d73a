//! Zonotopes `c + sum [-g_i, g_i]`: exact volume, surface area and shadows
//! by determinant expansion, projection bodies of polytopes, and conversion
//! to vertex/facet form.

use std::collections::{BTreeSet, HashMap};

use rand::seq::index::sample;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{binomial, cofactor_vector, det_rows, dot, for_each_subset, gram_schmidt, norm, rank};
use crate::polytope::{convex_hull, Polytope};
use crate::sampling::{mc_estimate, minimize_on_sphere, Direction, Estimate, MinimizeOptions, RngSeed, SubspaceBasis};

/// Conversion to a polytope enumerates (n-1)-subsets and sign patterns.
pub const MAX_CONVERSION_GENERATORS: usize = 12;
/// Above this many n-subsets the volume is estimated by subset sampling.
pub const MAX_EXACT_TERMS: f64 = 2.0e6;
const PARALLEL_COS: f64 = 1.0 - 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Zonotope {
    dim: usize,
    center: Vec<f64>,
    generators: Vec<Vec<f64>>,
}

impl Zonotope {
    pub fn new(center: Vec<f64>, generators: Vec<Vec<f64>>) -> Result<Self> {
        let n = center.len();
        if n < 1 || generators.iter().any(|g| g.len() != n) {
            return Err(GeomError::InvalidDimension("generator length differs from the center".into()));
        }
        if rank(&generators, 1e-10) < n {
            return Err(GeomError::DegenerateZonotope);
        }
        Ok(Zonotope { dim: n, center, generators })
    }

    /// Zonotope centered at the origin.
    pub fn centered(generators: Vec<Vec<f64>>) -> Result<Self> {
        let n = generators.first().map(|g| g.len()).ok_or(GeomError::DegenerateZonotope)?;
        Self::new(vec![0.0; n], generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn support(&self, x: &[f64]) -> f64 {
        dot(&self.center, x) + self.generators.iter().map(|g| dot(g, x).abs()).sum::<f64>()
    }

    pub fn scaled(&self, t: f64) -> Zonotope {
        Zonotope {
            dim: self.dim,
            center: self.center.iter().map(|x| x * t).collect(),
            generators: self.generators.iter().map(|g| g.iter().map(|x| x * t).collect()).collect(),
        }
    }

    /// Minkowski sum: generator lists concatenate.
    pub fn sum(&self, other: &Zonotope) -> Result<Zonotope> {
        if other.dim != self.dim {
            return Err(GeomError::InvalidDimension("Minkowski sum of bodies in different dimensions".into()));
        }
        let center = self.center.iter().zip(&other.center).map(|(a, b)| a + b).collect();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Zonotope::new(center, generators)
    }

    /// Combines parallel and antiparallel generators (lengths add). Unit
    /// directions are bucketed on a grid and compared against the groups in
    /// neighbouring cells, for both signs.
    pub fn merged(&self) -> Zonotope {
        let n = self.dim;
        let cell = |u: &[f64]| -> Vec<i64> { u.iter().map(|x| (x * 1e6).round() as i64).collect() };
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut groups: Vec<(Vec<f64>, f64)> = Vec::new();
        for g in &self.generators {
            let l = norm(g);
            if l == 0.0 {
                continue;
            }
            let u: Vec<f64> = g.iter().map(|x| x / l).collect();
            let mut found = None;
            'search: for sign in [1.0, -1.0] {
                let key: Vec<i64> = cell(&u.iter().map(|x| sign * x).collect::<Vec<_>>());
                for offs in 0..3usize.pow(n as u32) {
                    let mut probe = key.clone();
                    let mut o = offs;
                    for c in probe.iter_mut() {
                        *c += (o % 3) as i64 - 1;
                        o /= 3;
                    }
                    if let Some(ids) = buckets.get(&probe) {
                        for &id in ids {
                            if sign * dot(&groups[id].0, &u) > PARALLEL_COS {
                                found = Some((id, sign));
                                break 'search;
                            }
                        }
                    }
                }
            }
            match found {
                Some((id, _)) => groups[id].1 += l,
                None => {
                    buckets.entry(cell(&u)).or_default().push(groups.len());
                    groups.push((u, l));
                }
            }
        }
        Zonotope {
            dim: n,
            center: self.center.clone(),
            generators: groups.into_iter().map(|(u, l)| u.into_iter().map(|x| x * l).collect()).collect(),
        }
    }

    fn det_sum(&self, gens: &[Vec<f64>], k: usize) -> f64 {
        let mut total = 0.0;
        for_each_subset(gens.len(), k, |idx| {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| gens[i].as_slice()).collect();
            total += det_rows(&rows).abs();
        });
        2f64.powi(k as i32) * total
    }

    /// `2^n sum_J |det g_J|` over n-subsets.
    pub fn volume(&self) -> Result<f64> {
        let m = self.merged();
        let terms = binomial(m.generators.len(), self.dim);
        if terms > MAX_EXACT_TERMS {
            return Err(GeomError::TooManyGenerators { count: m.generators.len(), limit: self.exact_generator_limit() });
        }
        Ok(self.det_sum(&m.generators, self.dim))
    }

    fn exact_generator_limit(&self) -> usize {
        (self.dim..).take_while(|&m| binomial(m, self.dim) <= MAX_EXACT_TERMS).last().unwrap_or(self.dim)
    }

    /// Exact volume when the subset count allows, otherwise an unbiased
    /// estimate from `samples` uniformly drawn n-subsets.
    pub fn volume_estimate(&self, samples: usize, seed: RngSeed) -> Result<Estimate> {
        let m = self.merged();
        let n = self.dim;
        let terms = binomial(m.generators.len(), n);
        if terms <= MAX_EXACT_TERMS {
            let v = self.det_sum(&m.generators, n);
            return Ok(Estimate { mean: v, stderr: 0.0, n_samples: 1 });
        }
        let mut rng = seed.rng();
        let vals: Vec<f64> = (0..samples.max(2))
            .map(|_| {
                let idx = sample(&mut rng, m.generators.len(), n);
                let rows: Vec<&[f64]> = idx.iter().map(|i| m.generators[i].as_slice()).collect();
                2f64.powi(n as i32) * terms * det_rows(&rows).abs()
            })
            .collect();
        mc_estimate(&vals)
    }

    /// `2^n sum_J vol_{n-1}(g_J)` over (n-1)-subsets.
    pub fn surface_area(&self) -> Result<f64> {
        let m = self.merged();
        let n = self.dim;
        if binomial(m.generators.len(), n - 1) > MAX_EXACT_TERMS {
            return Err(GeomError::TooManyGenerators { count: m.generators.len(), limit: self.exact_generator_limit() });
        }
        let mut total = 0.0;
        for_each_subset(m.generators.len(), n - 1, |idx| {
            let vs: Vec<Vec<f64>> = idx.iter().map(|&i| m.generators[i].clone()).collect();
            let (_, diag) = gram_schmidt(&vs);
            total += diag.iter().product::<f64>();
        });
        Ok(2f64.powi(n as i32) * total)
    }

    /// Generators of the zonotope whose support function is
    /// `xi -> |P_{xi^perp} Z|`: the cofactor vectors of all (n-1)-subsets.
    pub fn shadow_generators(&self) -> Result<Vec<Vec<f64>>> {
        let m = self.merged();
        let n = self.dim;
        if binomial(m.generators.len(), n - 1) > MAX_EXACT_TERMS {
            return Err(GeomError::TooManyGenerators { count: m.generators.len(), limit: self.exact_generator_limit() });
        }
        let scale = 2f64.powi(n as i32 - 1);
        let mut out = Vec::new();
        for_each_subset(m.generators.len(), n - 1, |idx| {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| m.generators[i].as_slice()).collect();
            let c = cofactor_vector(&rows, n);
            if norm(&c) > 0.0 {
                out.push(c.into_iter().map(|x| x * scale).collect());
            }
        });
        Ok(out)
    }

    /// `(n-1)`-volume of the shadow on `xi^perp`.
    pub fn hyperplane_projection_volume(&self, xi: &[f64]) -> Result<f64> {
        Ok(self.shadow_generators()?.iter().map(|c| dot(c, xi).abs()).sum())
    }

    /// The shadow `P_F Z` in frame coordinates.
    pub fn project(&self, f: &SubspaceBasis) -> Result<Zonotope> {
        if f.dim_ambient() != self.dim || f.dim_sub() >= self.dim {
            return Err(GeomError::InvalidDimension(format!(
                "projection onto G({}, {}) of a zonotope in R^{}",
                f.dim_ambient(),
                f.dim_sub(),
                self.dim
            )));
        }
        Zonotope::new(f.coordinates_of(&self.center), self.generators.iter().map(|g| f.coordinates_of(g)).collect())
    }

    /// k-volume of `P_F Z`.
    pub fn projection_volume(&self, f: &SubspaceBasis) -> Result<f64> {
        let p = self.project(f)?;
        p.volume()
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let n = self.dim;
        let m = self.merged();
        let gens = &m.generators;
        if gens.len() > MAX_CONVERSION_GENERATORS {
            return Err(GeomError::TooManyGenerators { count: gens.len(), limit: MAX_CONVERSION_GENERATORS });
        }
        let scale = gens.iter().map(|g| norm(g)).fold(0.0, f64::max);
        let mut patterns: BTreeSet<Vec<i8>> = BTreeSet::new();
        for_each_subset(gens.len(), n - 1, |idx| {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| gens[i].as_slice()).collect();
            let c = cofactor_vector(&rows, n);
            let l = norm(&c);
            if !(l > 1e-12 * scale.powi(n as i32 - 1)) {
                return;
            }
            let u: Vec<f64> = c.iter().map(|x| x / l).collect();
            let s: Vec<f64> = gens.iter().map(|g| dot(g, &u)).collect();
            let free: Vec<usize> = (0..gens.len()).filter(|&i| s[i].abs() <= 1e-10 * norm(&gens[i])).collect();
            for sign in [1.0, -1.0] {
                let base: Vec<i8> = s.iter().map(|&x| if sign * x > 0.0 { 1 } else { -1 }).collect();
                for mask in 0..1usize << free.len() {
                    let mut p = base.clone();
                    for (b, &i) in free.iter().enumerate() {
                        p[i] = if mask >> b & 1 == 1 { 1 } else { -1 };
                    }
                    patterns.insert(p);
                }
            }
        });
        let pts: Vec<Vec<f64>> = patterns
            .iter()
            .map(|p| {
                let mut v = self.center.clone();
                for (g, &s) in gens.iter().zip(p) {
                    v.iter_mut().zip(g).for_each(|(a, b)| *a += s as f64 * b);
                }
                v
            })
            .collect();
        convex_hull(&pts, n)
    }

    /// Direction minimizing the volume of the hyperplane shadow.
    pub fn min_projection(&self, opts: &MinimizeOptions, seed: RngSeed) -> Result<(Direction, f64)> {
        let cs = self.shadow_generators()?;
        minimize_on_sphere(|xi| cs.iter().map(|c| dot(c, xi.coords()).abs()).sum(), self.dim, opts, seed)
    }
}

/// The projection body `Pi K`: generators `(a_i / 2) u_i`, merged.
pub fn projection_body(p: &Polytope) -> Zonotope {
    let gens: Vec<Vec<f64>> =
        p.facets().iter().map(|f| f.normal.coords().iter().map(|x| x * f.measure / 2.0).collect()).collect();
    Zonotope { dim: p.dim(), center: vec![0.0; p.dim()], generators: gens }.merged()
}

/// `[-1, 1]^n` as a zonotope.
pub fn cube_zonotope(n: usize) -> Zonotope {
    let gens = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    Zonotope { dim: n, center: vec![0.0; n], generators: gens }
}

/// Centered zonotope with `m` standard Gaussian generators.
pub fn random_zonotope(n: usize, m: usize, seed: u64) -> Result<Zonotope> {
    if !(2..=8).contains(&n) {
        return Err(GeomError::InvalidDimension(format!("random zonotope needs 2 <= n <= 8, got {n}")));
    }
    let mut rng = RngSeed::new(seed, 0).derive("random-zonotope").rng();
    let gens = (0..m).map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
    Zonotope::centered(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiparallel_generators_merge() {
        let z = Zonotope::centered(vec![vec![1.0, 0.0], vec![-2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let m = z.merged();
        assert_eq!(m.generators().len(), 2);
        assert!((m.volume().unwrap() - 12.0).abs() < 1e-12);
        assert!((z.support(&[1.0, 0.0]) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_generators_rejected() {
        assert_eq!(
            Zonotope::centered(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap_err(),
            GeomError::DegenerateZonotope
        );
    }
}
