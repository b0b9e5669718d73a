//! Dimensional constants and Kubota-type averages: quermassintegrals, mean
//! width, the normalized shadow averages `Q_k`, volume radii and `p_k`.

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::polytope::Polytope;
use crate::sampling::{mc_estimate, sample_grassmannian, sample_sphere, Estimate, RngSeed};
use crate::zonotope::Zonotope;

pub const DEFAULT_SPHERE_SAMPLES: usize = 20_000;
pub const DEFAULT_GRASSMANNIAN_SAMPLES: usize = 10_000;

/// Lanczos approximation (g = 7, n = 9), accurate to ~1e-15 for x > 0.
fn gamma(x: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let a = C[1..].iter().enumerate().fold(C[0], |acc, (i, c)| acc + c / (x + 1.0 + i as f64));
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Volume of the unit ball in R^n; `omega(0) = 1`.
pub fn omega(n: usize) -> f64 {
    // exact recursion avoids the gamma approximation for integer n
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => omega(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

/// `b_n = (n-1) omega_{n-1} / (n omega_n^{(n-1)/n})`.
pub fn b_constant(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 1.0) * omega(n - 1) / (nf * omega(n).powf((nf - 1.0) / nf))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimConstants {
    pub n: usize,
    /// `omega[j]` is the volume of the unit ball in R^j, `j = 0..=n`.
    pub omega: Vec<f64>,
    pub b: f64,
}

impl DimConstants {
    pub fn new(n: usize) -> Self {
        DimConstants { n, omega: (0..=n).map(omega).collect(), b: b_constant(n) }
    }
}

/// Gamma-function form of `omega`, kept as an independent cross-check.
pub fn omega_via_gamma(n: usize) -> f64 {
    std::f64::consts::PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0)
}

fn check_k(p: &Polytope, k: usize) -> Result<()> {
    if k == 0 || k >= p.dim() {
        return Err(GeomError::InvalidDimension(format!("need 1 <= k <= n - 1, got k = {k}, n = {}", p.dim())));
    }
    Ok(())
}

/// Haar average of `|P_F K|` over `G_{n,k}`; hyperplanes are sampled through
/// their normals.
pub fn mean_shadow_volume(p: &Polytope, k: usize, samples: usize, seed: RngSeed) -> Result<Estimate> {
    check_k(p, k)?;
    let n = p.dim();
    let vals: Vec<f64> = if k == n - 1 {
        let dirs = sample_sphere(n, samples, seed)?;
        dirs.par_iter().map(|xi| p.hyperplane_shadow_volume(xi.coords())).collect()
    } else {
        let frames = sample_grassmannian(n, k, samples, seed)?;
        frames.par_iter().map(|f| p.shadow_volume(f)).collect::<Result<_>>()?
    };
    mc_estimate(&vals)
}

/// Sphere average of `S(P_{xi^perp} K)`.
pub fn mean_hyperplane_shadow_surface(p: &Polytope, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let dirs = sample_sphere(p.dim(), samples, seed)?;
    let vals: Vec<f64> = dirs.par_iter().map(|xi| p.hyperplane_shadow_surface(xi.coords())).collect();
    mc_estimate(&vals)
}

/// Haar average of `S(P_F K)` over `G_{n,k}`, `2 <= k <= n - 1`.
pub fn mean_shadow_surface(p: &Polytope, k: usize, samples: usize, seed: RngSeed) -> Result<Estimate> {
    check_k(p, k)?;
    if k == 1 {
        return Err(GeomError::InvalidDimension("surface area of one-dimensional shadows".into()));
    }
    if k == p.dim() - 1 {
        return mean_hyperplane_shadow_surface(p, samples, seed);
    }
    let frames = sample_grassmannian(p.dim(), k, samples, seed)?;
    let vals: Vec<f64> = frames.par_iter().map(|f| p.shadow_surface(f)).collect::<Result<_>>()?;
    mc_estimate(&vals)
}

/// `Q_k = ((1/omega_k) mean |P_F K|)^{1/k}`.
pub fn q_k(p: &Polytope, k: usize, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let m = mean_shadow_volume(p, k, samples, seed)?;
    Ok(m.scale(1.0 / omega(k)).powf(1.0 / k as f64))
}

/// `V_{n-p}(K) = omega_n Q_{n-p}^{n-p}`.
pub fn quermassintegral(p: &Polytope, order: usize, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let n = p.dim();
    if order == 0 || order >= n {
        return Err(GeomError::InvalidDimension(format!("need 1 <= p <= n - 1, got p = {order}")));
    }
    let k = n - order;
    Ok(mean_shadow_volume(p, k, samples, seed)?.scale(omega(n) / omega(k)))
}

/// Mean of the support function over the sphere.
pub fn mean_width(p: &Polytope, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let dirs = sample_sphere(p.dim(), samples, seed)?;
    let vals: Vec<f64> = dirs.par_iter().map(|t| p.support(t.coords())).collect();
    mc_estimate(&vals)
}

/// Mean of the gauge over the sphere.
pub fn m_value(p: &Polytope, samples: usize, seed: RngSeed) -> Result<Estimate> {
    if !p.contains_origin_in_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    let dirs = sample_sphere(p.dim(), samples, seed)?;
    let vals: Vec<f64> = dirs.par_iter().map(|t| p.gauge(t.coords())).collect::<Result<_>>()?;
    mc_estimate(&vals)
}

/// `(|K| / omega_n)^{1/n}`.
pub fn vrad(p: &Polytope) -> f64 {
    (p.volume() / omega(p.dim())).powf(1.0 / p.dim() as f64)
}

/// Volume radius of the polar body, `(mean h_K^{-n})^{1/n}`.
pub fn polar_vrad(p: &Polytope, samples: usize, seed: RngSeed) -> Result<Estimate> {
    polar_volume_ratio(p.dim(), |x| p.support(x), p.contains_origin_in_interior(), samples, seed)
}

/// Volume radius of the polar of a zonotope.
pub fn zonotope_polar_vrad(z: &Zonotope, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let inside = z.center().iter().all(|c| *c == 0.0);
    polar_volume_ratio(z.dim(), |x| z.support(x), inside, samples, seed)
}

fn polar_volume_ratio(
    n: usize,
    h: impl Fn(&[f64]) -> f64 + Sync,
    origin_inside: bool,
    samples: usize,
    seed: RngSeed,
) -> Result<Estimate> {
    if !origin_inside {
        return Err(GeomError::OriginNotInterior);
    }
    let dirs = sample_sphere(n, samples, seed)?;
    let vals: Vec<f64> = dirs.par_iter().map(|t| h(t.coords()).powi(-(n as i32))).collect();
    Ok(mc_estimate(&vals)?.powf(1.0 / n as f64))
}

/// Anything with an evaluable support function.
pub trait SupportFunction {
    fn dim(&self) -> usize;
    fn support(&self, x: &[f64]) -> f64;
}

impl SupportFunction for Polytope {
    fn dim(&self) -> usize {
        Polytope::dim(self)
    }
    fn support(&self, x: &[f64]) -> f64 {
        Polytope::support(self, x)
    }
}

impl SupportFunction for Zonotope {
    fn dim(&self) -> usize {
        Zonotope::dim(self)
    }
    fn support(&self, x: &[f64]) -> f64 {
        Zonotope::support(self, x)
    }
}

/// `V_{n-1}(K, C) = (1/n) sum a_i h_C(u_i)`.
pub fn mixed_volume_vn1(p: &Polytope, c: &dyn SupportFunction) -> Result<f64> {
    if c.dim() != p.dim() {
        return Err(GeomError::InvalidDimension("mixed volume of bodies in different dimensions".into()));
    }
    Ok(p.facets().iter().map(|f| f.measure * c.support(f.normal.coords())).sum::<f64>() / p.dim() as f64)
}

/// `p_k(K) = mean |P_F K| / |K|^{k/n}`.
pub fn p_k(p: &Polytope, k: usize, samples: usize, seed: RngSeed) -> Result<Estimate> {
    let m = mean_shadow_volume(p, k, samples, seed)?;
    Ok(m.scale(p.volume().powf(-(k as f64) / p.dim() as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_recursion() {
        for n in 1..=10 {
            assert!((omega(n) - omega_via_gamma(n)).abs() < 1e-12 * omega(n));
        }
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }
}
