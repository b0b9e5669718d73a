use nalgebra::DMatrix;
use shadowgeom::polytope::{ball_approx, convex_hull, cross_polytope, cube, random_hull, regular_simplex, unit_cube, Polytope};
use shadowgeom::sampling::{sample_grassmannian, sample_sphere, Direction, RngSeed, SubspaceBasis};
use shadowgeom::zonotope::random_zonotope;
use shadowgeom::GeomError;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn corpus(n: usize) -> Vec<Polytope> {
    let mut v = vec![cube(n), cross_polytope(n), regular_simplex(n).unwrap(), ball_approx(n, 200, 0).unwrap()];
    for s in 0..3 {
        v.push(random_hull(n, 4 * n, s).unwrap());
    }
    v
}

#[test]
fn cross_polytope_facets() {
    let b = cross_polytope(3);
    assert_eq!(b.facets().len(), 8);
    for f in b.facets() {
        for c in f.normal.coords() {
            assert!((c.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        assert!((f.measure - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
    assert!(rel(b.volume(), 4.0 / 3.0) < 1e-12);
    assert!(rel(b.surface_area(), 4.0 * 3f64.sqrt()) < 1e-12);
}

#[test]
fn sphere_points_hull_grows_toward_ball() {
    let omega4 = std::f64::consts::PI.powi(2) / 2.0;
    let small = ball_approx(4, 100, 1).unwrap().volume();
    let large = ball_approx(4, 2000, 1).unwrap().volume();
    assert!(small < large && large < omega4);
    assert!(large > 0.85 * omega4);
}

#[test]
fn simplex_volumes() {
    let corner = convex_hull(&[vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], 3).unwrap();
    assert!(rel(corner.volume(), 1.0 / 6.0) < 1e-12);
    for n in 3..=6 {
        let s = regular_simplex(n).unwrap();
        assert!(rel(s.volume(), 1.0) < 1e-10);
        let (c, _) = s.centroid_and_covariance();
        assert!(c.iter().all(|x| x.abs() < 1e-10));
        // every facet is at the same distance from the centroid
        let h = s.facets()[0].offset;
        assert!(s.facets().iter().all(|f| rel(f.offset, h) < 1e-10));
        assert!(rel(s.surface_area(), n as f64 * s.volume() / h) < 1e-9);
    }
}

#[test]
fn degenerate_input() {
    let pts = vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]];
    assert_eq!(convex_hull(&pts, 3).unwrap_err(), GeomError::DegenerateInput { affine_dim: 1, expected: 3 });
}

#[test]
fn structural_invariants_on_corpus() {
    for n in 3..=5 {
        for k in corpus(n) {
            let scale = k.scale();
            let s = k.surface_area();
            assert!(k.surface_measure().closedness_defect() < 1e-8 * s);
            for (i, f) in k.facets().iter().enumerate() {
                for v in k.vertices() {
                    assert!(f.normal.dot(v) <= f.offset + 1e-9 * scale);
                }
                let on: Vec<_> = k.facet_vertices(i).to_vec();
                assert!(on.len() >= n);
                for &j in &on {
                    assert!((f.normal.dot(&k.vertices()[j]) - f.offset).abs() < 1e-9 * scale);
                }
            }
            let c = k.interior_point();
            let cone: f64 = k.facets().iter().map(|f| f.measure * (f.offset - f.normal.dot(c))).sum::<f64>() / n as f64;
            assert!(rel(cone, k.volume()) < 1e-9);
            let (r, _) = k.inradius().unwrap();
            assert!(s <= n as f64 * k.volume() / r * (1.0 + 1e-9));
            assert!(k.circumradius() >= r);
        }
    }
}

#[test]
fn support_and_gauge() {
    let q = cube(3);
    let b = cross_polytope(3);
    let d = Direction::new(vec![1.0, 1.0, 1.0]).unwrap();
    assert!(rel(q.support(d.coords()), 3f64.sqrt()) < 1e-12);
    assert!(rel(b.support(&[1.0, 0.0, 0.0]), 1.0) < 1e-12);
    assert!(rel(q.gauge(&[1.0, 0.0, 0.0]).unwrap(), 1.0) < 1e-12);
    assert!(rel(q.gauge(d.coords()).unwrap(), 1.0 / 3f64.sqrt()) < 1e-12);
    let k = random_hull(4, 16, 7).unwrap();
    let kp = k.polar().unwrap();
    for x in sample_sphere(4, 50, RngSeed::new(2, 0)).unwrap() {
        assert!(rel(k.gauge(x.coords()).unwrap(), kp.support(x.coords())) < 1e-9);
        let (lo, hi) = (k.support(x.negate().coords()), k.support(x.coords()));
        assert!(lo + hi >= 0.0);
        assert!(rel(k.interval_shadow(&x), lo + hi) < 1e-12);
    }
    let shifted = q.translate(&[1.0, 0.0, 0.0]).unwrap();
    assert_eq!(shifted.gauge(&[1.0, 0.0, 0.0]).unwrap_err(), GeomError::OriginNotInterior);
}

fn same_vertex_set(a: &Polytope, b: &Polytope, tol: f64) -> bool {
    a.vertices().len() == b.vertices().len()
        && a.vertices().iter().all(|v| {
            b.vertices().iter().any(|w| v.iter().zip(w).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) < tol)
        })
}

#[test]
fn polarity() {
    assert!(same_vertex_set(&cube(3).polar().unwrap(), &cross_polytope(3), 1e-12));
    assert!(same_vertex_set(&cross_polytope(3).polar().unwrap(), &cube(3), 1e-12));
    for s in 0..4 {
        let k = random_hull(3 + s as usize % 2, 14, s).unwrap();
        assert!(same_vertex_set(&k.polar().unwrap().polar().unwrap(), &k, 1e-8));
    }
}

#[test]
fn hrep_round_trip() {
    let normals: Vec<Vec<f64>> = cube(3).facets().iter().map(|f| f.normal.coords().to_vec()).collect();
    let offsets = vec![2.0; 6];
    let k = Polytope::from_hrep(&normals, &offsets).unwrap();
    assert!(rel(k.volume(), 64.0) < 1e-12);
    // off-center box
    let normals = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 2.0], vec![0.0, -1.0]];
    let k = Polytope::from_hrep(&normals, &[5.0, -3.0, 2.0, 0.0]).unwrap();
    assert!(rel(k.volume(), 2.0) < 1e-12);
}

#[test]
fn projections() {
    let q = cube(3);
    let e3 = SubspaceBasis::hyperplane(&Direction::axis(3, 2));
    assert!(rel(q.project(&e3).unwrap().volume(), 4.0) < 1e-12);
    let diag = Direction::new(vec![1.0, 1.0, 1.0]).unwrap();
    let f = SubspaceBasis::hyperplane(&diag);
    assert!(rel(q.project(&f).unwrap().volume(), 4.0 * 3f64.sqrt()) < 1e-12);
    assert!(rel(q.hyperplane_shadow_volume(diag.coords()), 4.0 * 3f64.sqrt()) < 1e-12);
    assert!(rel(q.interval_shadow(&Direction::axis(3, 0)), 2.0) < 1e-12);
    assert!(rel(q.interval_shadow(&diag), 2.0 * 3f64.sqrt()) < 1e-12);
    assert!(matches!(q.project(&SubspaceBasis::coordinate(3, &[0])), Err(GeomError::InvalidDimension(_))));
    assert!(matches!(q.project(&SubspaceBasis::coordinate(4, &[0, 1])), Err(GeomError::InvalidDimension(_))));

    let ball = ball_approx(3, 2000, 0).unwrap();
    for g in shadowgeom::sampling::sample_grassmannian(3, 2, 5, RngSeed::new(0, 9)).unwrap() {
        let a = ball.project(&g).unwrap().volume();
        assert!(rel(a, std::f64::consts::PI) < 0.01);
    }
}

#[test]
fn cauchy_formula_on_corpus() {
    for n in 3..=5 {
        for (i, k) in corpus(n).into_iter().enumerate() {
            for xi in sample_sphere(n, 100, RngSeed::new(i as u64, n as u64)).unwrap() {
                let f = SubspaceBasis::hyperplane(&xi);
                let hull = k.project(&f).unwrap();
                assert!(rel(k.hyperplane_shadow_volume(xi.coords()), hull.volume()) < 1e-8);
                assert!(rel(k.hyperplane_shadow_surface(xi.coords()), hull.surface_area()) < 1e-8);
                assert!(rel(k.shadow_volume(&f).unwrap(), hull.volume()) < 1e-8);
            }
        }
    }
}

#[test]
fn planar_fast_path_matches_hull() {
    let k = random_hull(5, 20, 3).unwrap();
    for g in shadowgeom::sampling::sample_grassmannian(5, 2, 20, RngSeed::new(4, 4)).unwrap() {
        let p = k.project(&g).unwrap();
        assert!(rel(k.shadow_volume(&g).unwrap(), p.volume()) < 1e-10);
        assert!(rel(k.shadow_surface(&g).unwrap(), p.surface_area()) < 1e-10);
    }
}

#[test]
fn projection_monotone_under_inclusion() {
    let outer = cube(4);
    let inner = cross_polytope(4);
    for g in shadowgeom::sampling::sample_grassmannian(4, 3, 20, RngSeed::new(5, 5)).unwrap() {
        assert!(inner.shadow_volume(&g).unwrap() <= outer.shadow_volume(&g).unwrap() + 1e-12);
    }
}

#[test]
fn linear_images() {
    let q = cube(3);
    let twice = q.transform(&(DMatrix::identity(3, 3) * 2.0)).unwrap();
    assert!(rel(twice.volume(), 64.0) < 1e-12);
    let t = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0, 1.0]));
    let rebuilt = q.transform(&t).unwrap().surface_area();
    assert!(rel(q.surface_area_under_transform(&t).unwrap(), rebuilt) < 1e-9);
    assert!(rel(rebuilt, 2.0 * 4.0 + 4.0 * 16.0) < 1e-12);
    assert!(rel(q.surface_area_under_transform(&DMatrix::identity(3, 3)).unwrap(), 24.0) < 1e-12);
    assert!(rel(q.surface_area_under_transform(&(DMatrix::identity(3, 3) * 2.0)).unwrap(), 96.0) < 1e-12);
    let (c, s) = (0.3f64.cos(), 0.3f64.sin());
    let rot = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
    let r = q.transform(&rot).unwrap();
    assert!(rel(r.volume(), 8.0) < 1e-9 && rel(r.surface_area(), 24.0) < 1e-9);
    assert!(matches!(q.transform(&DMatrix::zeros(3, 3)), Err(GeomError::SingularMatrix { .. })));

    let k = random_hull(4, 16, 11).unwrap();
    let m = DMatrix::from_fn(4, 4, |i, j| if i == j { 1.5 } else { 0.1 * (i as f64 - j as f64) });
    assert!(rel(k.surface_area_under_transform(&m).unwrap(), k.transform(&m).unwrap().surface_area()) < 1e-9);
}

#[test]
fn radii() {
    let (r, c) = cube(3).inradius().unwrap();
    assert!((r - 1.0).abs() < 1e-9 && c.iter().all(|x| x.abs() < 1e-9));
    let (r, _) = cross_polytope(3).inradius().unwrap();
    assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    let corner = convex_hull(&[vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], 3).unwrap();
    let (r, _) = corner.inradius().unwrap();
    // the inscribed ball of the corner simplex touches all four facets
    assert!((r - 1.0 / (3.0 + 3f64.sqrt())).abs() < 1e-9);
    let mut best = 0.0_f64;
    let g = 40;
    for i in 1..g {
        for j in 1..g - i {
            for l in 1..g - i - j {
                let x = [i as f64 / g as f64, j as f64 / g as f64, l as f64 / g as f64];
                let d = corner.facets().iter().map(|f| f.offset - f.normal.dot(&x)).fold(f64::MAX, f64::min);
                best = best.max(d);
            }
        }
    }
    assert!(r >= best - 1e-12 && r - best < 0.02);
    assert!(rel(cube(3).circumradius(), 3f64.sqrt()) < 1e-12);
    assert!(rel(cross_polytope(3).circumradius(), 1.0) < 1e-12);
}

#[test]
fn moments() {
    let (c, _) = cube(3).centroid_and_covariance();
    assert!(c.iter().all(|x| x.abs() < 1e-14));
    let (_, cov) = unit_cube(3).centroid_and_covariance();
    assert!((cov.clone() - DMatrix::identity(3, 3) / 12.0).abs().max() < 1e-14);

    // covariance of TK is T Cov T^T, checked against rejection sampling
    use rand::Rng;
    let k = random_hull(3, 12, 5).unwrap();
    let t = DMatrix::from_row_slice(3, 3, &[1.0, 0.4, 0.0, 0.0, 0.8, -0.3, 0.2, 0.0, 1.3]);
    let tk = k.transform(&t).unwrap();
    let (_, cov_k) = k.centroid_and_covariance();
    let (mean_tk, cov_tk) = tk.centroid_and_covariance();
    assert!((&t * &cov_k * t.transpose() - &cov_tk).abs().max() < 1e-10);
    let lo: Vec<f64> = (0..3).map(|i| -tk.support(&Direction::axis(3, i).negate().into_inner())).collect();
    let hi: Vec<f64> = (0..3).map(|i| tk.support(Direction::axis(3, i).coords())).collect();
    let mut rng = RngSeed::new(6, 0).rng();
    let mut samples = Vec::new();
    while samples.len() < 100_000 {
        let x: Vec<f64> = (0..3).map(|i| rng.gen_range(lo[i]..hi[i])).collect();
        if tk.facets().iter().all(|f| f.normal.dot(&x) <= f.offset) {
            samples.push(x);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let vals: Vec<f64> = samples.iter().map(|x| (x[i] - mean_tk[i]) * (x[j] - mean_tk[j])).collect();
            let est = shadowgeom::sampling::mc_estimate(&vals).unwrap();
            assert!(est.covers(cov_tk[(i, j)], 4.0), "({i},{j}) {} vs {}", est.mean, cov_tk[(i, j)]);
        }
    }
}

#[test]
fn three_dimensional_shadows_match_the_general_hull() {
    let bodies = [
        random_hull(5, 30, 3).unwrap(),
        ball_approx(5, 200, 1).unwrap(),
        cube(5),
        cross_polytope(5),
        random_zonotope(5, 7, 2).unwrap().to_polytope().unwrap(),
        random_hull(4, 40, 5).unwrap(),
    ];
    for (i, k) in bodies.iter().enumerate() {
        let mut frames = sample_grassmannian(k.dim(), 3, 100, RngSeed::new(i as u64, 31)).unwrap();
        frames.push(SubspaceBasis::coordinate(k.dim(), &[0, 1, 2]));
        for f in frames {
            let (v, s) = k.shadow_measures(&f).unwrap();
            let p = k.project(&f).unwrap();
            assert!((v - p.volume()).abs() < 1e-9 * p.volume(), "body {i}");
            assert!((s - p.surface_area()).abs() < 1e-9 * p.surface_area(), "body {i}");
        }
    }
}
