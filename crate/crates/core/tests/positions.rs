use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use shadowgeom::polytope::{ball_approx, cross_polytope, cube, random_hull, regular_simplex, unit_cube, Polytope};
use shadowgeom::positions::{
    isotropic_position, john_position, lowner_position, min_mean_width_position, minimal_surface_parameter,
    minimal_surface_position, outer_volume_ratio, position_solver, position_solvers, volume_ratio, PositionConfig,
};
use shadowgeom::quermass::omega;
use shadowgeom::sampling::{sample_sphere, RngSeed};
use shadowgeom::zonotope::random_zonotope;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    g.qr().q()
}

/// `U diag(s) V` with singular values log-uniform in `[1, 10]`, one of
/// them pinned to 10 so the condition number is exactly 10 or less.
fn conditioned_map(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = RngSeed::new(seed, 99).rng();
    let u = orthogonal(n, &mut rng);
    let v = orthogonal(n, &mut rng);
    let mut s: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.gen::<f64>())).collect();
    s[0] = 1.0;
    u * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(s)) * v
}

const CROSS_PARTIAL: f64 = 5.719_105_757_981_5;

#[test]
fn cube_and_cross_are_already_isotropic() {
    let (r, d) = minimal_surface_position(&cube(3), 1e-6, 500).unwrap();
    assert!(r.residual <= 1e-10);
    assert_eq!(r.iterations, 0);
    assert!(rel(d, 6.0) < 1e-12);
    let (r, d) = minimal_surface_position(&cross_polytope(3), 1e-6, 500).unwrap();
    assert!(r.residual <= 1e-10);
    assert!(rel(d, 4.0 * 3f64.sqrt() / (4.0f64 / 3.0).powf(2.0 / 3.0)) < 1e-12);
    assert!(rel(d, CROSS_PARTIAL) < 1e-9);
    for n in 2..=6 {
        let (r, d) = minimal_surface_position(&cube(n), 1e-6, 500).unwrap();
        assert!(r.residual <= 1e-10 && rel(d, 2.0 * n as f64) < 1e-12);
        assert!(minimal_surface_position(&cross_polytope(n), 1e-6, 500).unwrap().0.residual <= 1e-10);
    }
}

#[test]
fn stretched_cube_recovers_partial() {
    let k = cube(3).transform(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0, 1.0]))).unwrap();
    assert!(minimal_surface_parameter(&k) > 6.5);
    let (r, d) = minimal_surface_position(&k, 1e-6, 500).unwrap();
    assert!(r.converged && r.residual < 1e-6 && r.iterations <= 500, "{r:?}");
    assert!((d - 6.0).abs() < 1e-4, "{d}");
    assert!(rel(r.transform_matrix().determinant().abs(), 1.0) < 1e-10);
}

#[test]
fn random_images_recover_partial() {
    for (base, target) in [(cube(3), 6.0), (cross_polytope(3), CROSS_PARTIAL)] {
        for seed in 0..10 {
            let k = base.transform(&conditioned_map(3, seed)).unwrap();
            let (r, d) = minimal_surface_position(&k, 1e-6, 500).unwrap();
            assert!(r.converged && r.residual < 1e-6 && r.iterations <= 500, "seed {seed}: {r:?}");
            assert!((d - target).abs() < 1e-3, "seed {seed}: {d} vs {target}");
        }
    }
}

#[test]
fn petty_certificate_and_isoperimetric_floor() {
    for (seed, k) in [random_hull(3, 12, 1).unwrap(), random_hull(4, 16, 2).unwrap(), random_zonotope(3, 6, 3).unwrap().to_polytope().unwrap()]
        .into_iter()
        .enumerate()
    {
        let n = k.dim();
        let (r, d) = minimal_surface_position(&k, 1e-8, 2000).unwrap();
        assert!(r.converged);
        let pos = r.apply(&k).unwrap();
        assert!(rel(pos.volume(), k.volume()) < 1e-9);
        let s = pos.surface_area();
        assert!(rel(d, s / pos.volume().powf((n as f64 - 1.0) / n as f64)) < 1e-9);
        for xi in sample_sphere(n, 100, RngSeed::new(seed as u64, 1)).unwrap() {
            let lhs: f64 = pos.facets().iter().map(|f| f.measure * xi.dot(f.normal.coords()).powi(2)).sum::<f64>() * n as f64;
            assert!(rel(lhs, s) < 1e-7);
        }
        assert!(d >= n as f64 * omega(n).powf(1.0 / n as f64));
        // the minimum is not beaten by random images
        for t in 0..5 {
            let other = k.transform(&conditioned_map(n, 50 + t)).unwrap();
            assert!(minimal_surface_parameter(&other) >= d - 1e-9);
        }
    }
}

#[test]
fn symmetric_surface_bound() {
    for k in [cube(3), cross_polytope(4), random_zonotope(4, 7, 5).unwrap().to_polytope().unwrap()] {
        let n = k.dim() as f64;
        let (r, _) = minimal_surface_position(&k, 1e-8, 2000).unwrap();
        let pos = r.apply(&k).unwrap();
        let unit = pos.transform(&(DMatrix::identity(k.dim(), k.dim()) * pos.volume().powf(-1.0 / n))).unwrap();
        assert!(unit.surface_area() <= 2.0 * n + 1e-6);
    }
}

#[test]
fn isotropic_constant_of_cube() {
    for n in 2..=5 {
        let (r, l) = isotropic_position(&unit_cube(n)).unwrap();
        assert!((l - 12f64.powf(-0.5)).abs() < 1e-10, "{n}: {l}");
        assert!(r.residual < 1e-10);
        let t = r.transform_matrix();
        assert!((t - DMatrix::identity(n, n)).norm() < 1e-10);
    }
    let rotated = unit_cube(3).transform(&conditioned_orthogonal(3, 4)).unwrap();
    assert!((isotropic_position(&rotated).unwrap().1 - 12f64.powf(-0.5)).abs() < 1e-10);
    for seed in 0..5 {
        let k = random_hull(4, 20, seed).unwrap().translate(&[0.3, -1.0, 2.0, 0.5]).unwrap();
        let (r, l) = isotropic_position(&k).unwrap();
        assert!(r.residual < 1e-8);
        let pos = r.apply(&k).unwrap();
        assert!(rel(pos.volume(), 1.0) < 1e-9);
        let (c, cov) = pos.centroid_and_covariance();
        assert!(c.iter().all(|x| x.abs() < 1e-9));
        assert!((cov[(0, 0)] - l * l).abs() < 1e-9);
    }
}

fn conditioned_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    orthogonal(n, &mut RngSeed::new(seed, 98).rng())
}

#[test]
fn lowner_of_cube_and_simplex() {
    let (r, e) = lowner_position(&cube(3), 1e-7).unwrap();
    assert!(r.converged);
    for a in e.semi_axes() {
        assert!((a - 3f64.sqrt()).abs() < 1e-5, "{a}");
    }
    assert!(e.center.iter().all(|c| c.abs() < 1e-9));

    let s = regular_simplex(3).unwrap();
    let (_, e) = lowner_position(&s, 1e-9).unwrap();
    let inv = e.shape_matrix().try_inverse().unwrap();
    for v in s.vertices() {
        let x = nalgebra::DVector::from_iterator(3, v.iter().zip(&e.center).map(|(a, b)| a - b));
        assert!((x.dot(&(&inv * &x)) - 1.0).abs() < 1e-6);
    }

    let (_, e) = lowner_position(&ball_approx(3, 2000, 0).unwrap(), 1e-7).unwrap();
    for a in e.semi_axes() {
        assert!((a - 1.0).abs() < 0.01);
    }
}

#[test]
fn john_of_cube_and_cross() {
    let (r, e) = john_position(&cube(3), 1e-9).unwrap();
    assert!(r.converged);
    for a in e.semi_axes() {
        assert!((a - 1.0).abs() < 1e-5, "{a}");
    }
    let (_, e) = john_position(&cross_polytope(3), 1e-9).unwrap();
    for a in e.semi_axes() {
        assert!((a - 3f64.powf(-0.5)).abs() < 1e-5, "{a}");
    }
    // a box is its own John body up to scaling of the axes
    let b = cube(3).transform(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 0.5]))).unwrap();
    let (_, e) = john_position(&b, 1e-9).unwrap();
    let axes = e.semi_axes();
    for (a, want) in axes.iter().zip([0.5, 1.0, 3.0]) {
        assert!((a - want).abs() < 1e-5 * want);
    }
    // non-symmetric: the simplex's inscribed ball is its John ellipsoid
    let s = regular_simplex(3).unwrap();
    let (_, e) = john_position(&s, 1e-9).unwrap();
    let (r_in, _) = s.inradius().unwrap();
    for a in e.semi_axes() {
        assert!((a - r_in).abs() < 1e-5 * r_in);
    }
}

#[test]
fn john_lowner_duality() {
    for k in [cube(3), cross_polytope(3), random_zonotope(3, 5, 2).unwrap().to_polytope().unwrap(), cross_polytope(4)] {
        let (_, john) = john_position(&k, 1e-10).unwrap();
        let (_, lowner) = lowner_position(&k.polar().unwrap(), 1e-9).unwrap();
        let product = john.shape_matrix() * lowner.shape_matrix();
        let dev = (product - DMatrix::identity(k.dim(), k.dim())).norm();
        assert!(dev < 1e-4, "{dev}");
    }
}

#[test]
fn ellipsoids_lie_inside_and_outside() {
    let k = random_hull(4, 25, 11).unwrap();
    let (_, john) = john_position(&k, 1e-9).unwrap();
    let (_, lowner) = lowner_position(&k, 1e-7).unwrap();
    assert!(john.volume() <= k.volume() && k.volume() <= lowner.volume());
    // n-fold dilation of John's ellipsoid contains K
    let inv = john.shape_matrix().try_inverse().unwrap();
    for v in k.vertices() {
        let x = nalgebra::DVector::from_iterator(4, v.iter().zip(&john.center).map(|(a, b)| a - b));
        assert!(x.dot(&(&inv * &x)).sqrt() <= 4.0 + 1e-9);
    }
    let inv = lowner.shape_matrix().try_inverse().unwrap();
    for v in k.vertices() {
        let x = nalgebra::DVector::from_iterator(4, v.iter().zip(&lowner.center).map(|(a, b)| a - b));
        assert!(x.dot(&(&inv * &x)) <= 1.0 + 1e-6);
    }
}

#[test]
fn volume_ratios() {
    let vr = volume_ratio(&cube(3)).unwrap();
    assert!(rel(vr, (6.0 / std::f64::consts::PI).powf(1.0 / 3.0)) < 1e-5);
    assert!((volume_ratio(&ball_approx(3, 2000, 0).unwrap()).unwrap() - 1.0).abs() < 0.01);
    for k in [cross_polytope(3), random_hull(3, 15, 2).unwrap(), regular_simplex(4).unwrap()] {
        assert!(volume_ratio(&k).unwrap() >= 1.0);
        assert!(outer_volume_ratio(&k).unwrap() >= 1.0);
    }
    // ovr(Q) = vr(B_1)
    assert!(rel(outer_volume_ratio(&cube(3)).unwrap(), volume_ratio(&cross_polytope(3)).unwrap()) < 1e-9);
}

fn mean_width_on(p: &Polytope, seed: RngSeed, samples: usize) -> f64 {
    let dirs = sample_sphere(p.dim(), samples, seed).unwrap();
    dirs.iter().map(|d| p.support(d.coords())).sum::<f64>() / samples as f64
}

#[test]
fn mean_width_position() {
    let seed = RngSeed::new(0, 7);
    let ball = ball_approx(3, 500, 0).unwrap();
    let r = min_mean_width_position(&ball, 4000, 40, seed).unwrap();
    assert!((r.transform_matrix() - DMatrix::identity(3, 3)).norm() < 0.05);

    let r = min_mean_width_position(&cube(3), 4000, 40, seed).unwrap();
    assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
    assert!(r.residual < 0.1, "{}", r.residual);

    let s = 2f64.powf(-0.5);
    let stretched = cube(3).transform(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, s, s]))).unwrap();
    let r = min_mean_width_position(&stretched, 4000, 80, seed).unwrap();
    assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
    let pos = r.apply(&stretched).unwrap();
    assert!(rel(pos.volume(), 8.0) < 1e-9);
    let check = RngSeed::new(1, 7);
    let w = mean_width_on(&pos, check, 40_000);
    let w_cube = mean_width_on(&cube(3), check, 40_000);
    assert!(rel(w, w_cube) < 0.02, "{w} vs {w_cube}");
}

#[test]
fn registry() {
    let names: Vec<_> = position_solvers().iter().map(|s| s.name()).collect();
    assert_eq!(names, ["min-surface", "isotropic", "john", "lowner", "min-mean-width"]);
    assert!(position_solver("banach-mazur").is_err());
    let cfg = PositionConfig::default();
    let out = position_solver("min-surface").unwrap().solve(&cube(3), &cfg).unwrap();
    assert!(rel(out.parameter.unwrap(), 6.0) < 1e-12);
    let out = position_solver("lowner").unwrap().solve(&cube(3), &cfg).unwrap();
    assert!(out.ellipsoid.is_some());
    let json = serde_json::to_string(&out.result).unwrap();
    assert!(json.contains("\"residual\""));
}

#[test]
fn non_convergence_is_flagged() {
    let k = cube(3).transform(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![50.0, 1.0, 1.0]))).unwrap();
    let (r, _) = minimal_surface_position(&k, 1e-12, 3).unwrap();
    assert!(!r.converged);
    assert_eq!(r.iterations, 3);
    assert!(r.clone().require_converged().is_err());
}
