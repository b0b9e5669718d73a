//! Standard bodies used by the corpus and the tests.

use rand_distr::{Distribution, StandardNormal};

use super::{convex_hull, Polytope};
use crate::error::{GeomError, Result};
use crate::linalg::orthonormal_complement;
use crate::sampling::{gaussian_direction, RngSeed};

fn check_dim(n: usize) -> Result<()> {
    if (2..=8).contains(&n) {
        Ok(())
    } else {
        Err(GeomError::InvalidDimension(format!("named bodies need 2 <= n <= 8, got {n}")))
    }
}

fn box_points(n: usize, half: f64) -> Vec<Vec<f64>> {
    (0..1usize << n).map(|m| (0..n).map(|j| if m >> j & 1 == 1 { half } else { -half }).collect()).collect()
}

/// `Q_n = [-1, 1]^n`.
pub fn cube(n: usize) -> Polytope {
    convex_hull(&box_points(n, 1.0), n).expect("cube")
}

/// `C_n = [-1/2, 1/2]^n`, the cube of volume one.
pub fn unit_cube(n: usize) -> Polytope {
    convex_hull(&box_points(n, 0.5), n).expect("unit cube")
}

/// The cross-polytope `B_1^n`.
pub fn cross_polytope(n: usize) -> Polytope {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = s;
            pts.push(v);
        }
    }
    convex_hull(&pts, n).expect("cross-polytope")
}

/// Regular simplex of volume one with centroid at the origin.
pub fn regular_simplex(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let m = n + 1;
    let diag = vec![vec![1.0 / (m as f64).sqrt(); m]];
    let basis = orthonormal_complement(&diag, m);
    let pts: Vec<Vec<f64>> = (0..m).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    let raw = convex_hull(&pts, n)?;
    let s = raw.volume().powf(-1.0 / n as f64);
    let scaled: Vec<Vec<f64>> = raw.vertices().iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
    convex_hull(&scaled, n)
}

/// Inscribed polytopal approximation of the unit ball with `count` points
/// on the sphere (Fibonacci lattice for n = 3, seeded uniform otherwise).
pub fn ball_approx(n: usize, count: usize, seed: u64) -> Result<Polytope> {
    check_dim(n)?;
    if count < n + 1 {
        return Err(GeomError::InvalidDimension(format!("ball-approx needs at least {} points", n + 1)));
    }
    let pts: Vec<Vec<f64>> = if n == 3 {
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        (0..count)
            .map(|i| {
                let z = 1.0 - (2 * i + 1) as f64 / count as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = golden * i as f64;
                vec![r * phi.cos(), r * phi.sin(), z]
            })
            .collect()
    } else {
        let mut rng = RngSeed::new(seed, 0).derive("ball-approx").rng();
        (0..count).map(|_| gaussian_direction(n, &mut rng).into_inner()).collect()
    };
    convex_hull(&pts, n)
}

/// Hull of `count` standard Gaussian points, translated so that the
/// centroid of the body sits at the origin.
pub fn random_hull(n: usize, count: usize, seed: u64) -> Result<Polytope> {
    check_dim(n)?;
    let mut rng = RngSeed::new(seed, 0).derive("random-hull").rng();
    let pts: Vec<Vec<f64>> =
        (0..count).map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
    let p = convex_hull(&pts, n)?;
    let (c, _) = p.centroid_and_covariance();
    p.translate(&c.iter().map(|x| -x).collect::<Vec<_>>())
}
