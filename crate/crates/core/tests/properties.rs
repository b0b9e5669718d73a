use nalgebra::DMatrix;
use proptest::prelude::*;

use shadowgeom::polytope::{convex_hull, cube, random_hull};
use shadowgeom::sampling::{sample_grassmannian, sample_sphere, RngSeed};
use shadowgeom::zonotope::{projection_body, random_zonotope};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hull_measures_are_rigid_invariants(n in 2usize..=4, seed in 0u64..1000, shift in prop::collection::vec(-5.0f64..5.0, 4)) {
        let p = random_hull(n, 3 * n + 2, seed).unwrap();
        let q = p.translate(&shift[..n]).unwrap();
        prop_assert!(rel(q.volume(), p.volume()) < 1e-10);
        prop_assert!(rel(q.surface_area(), p.surface_area()) < 1e-10);
        let rot = DMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { 1.0 } else { 0.0 });
        let r = p.transform(&rot).unwrap();
        prop_assert!(rel(r.volume(), p.volume()) < 1e-10);
        prop_assert!(rel(r.surface_area(), p.surface_area()) < 1e-10);
    }

    #[test]
    fn volume_scales_with_the_determinant(n in 2usize..=4, seed in 0u64..1000, diag in prop::collection::vec(0.2f64..3.0, 4)) {
        let p = random_hull(n, 2 * n + 3, seed).unwrap();
        let t = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&diag[..n]));
        let det: f64 = diag[..n].iter().product();
        prop_assert!(rel(p.transform(&t).unwrap().volume(), det * p.volume()) < 1e-9);
    }

    #[test]
    fn interior_points_do_not_change_the_hull(n in 2usize..=4, seed in 0u64..1000, w in prop::collection::vec(0.0f64..1.0, 6)) {
        let p = random_hull(n, 2 * n + 2, seed).unwrap();
        let mut pts: Vec<Vec<f64>> = p.vertices().to_vec();
        let total: f64 = w.iter().sum::<f64>() + 1e-3;
        let mix: Vec<f64> = (0..n)
            .map(|i| pts.iter().zip(&w).map(|(v, c)| v[i] * c).sum::<f64>() / total)
            .collect();
        pts.push(mix);
        let q = convex_hull(&pts, n).unwrap();
        prop_assert_eq!(q.vertices().len(), p.vertices().len());
        prop_assert!(rel(q.volume(), p.volume()) < 1e-10);
    }

    #[test]
    fn support_of_hull_and_zonotope_agree(n in 2usize..=4, m in 0usize..4, seed in 0u64..1000) {
        let z = random_zonotope(n, n + m, seed).unwrap();
        let p = z.to_polytope().unwrap();
        for xi in sample_sphere(n, 16, RngSeed::new(seed, 3)).unwrap() {
            prop_assert!(rel(z.support(xi.coords()), p.support(xi.coords())) < 1e-9);
        }
    }

    #[test]
    fn projection_body_support_is_shadow_volume(n in 3usize..=4, seed in 0u64..1000) {
        let p = random_hull(n, 2 * n + 1, seed).unwrap();
        let pi = projection_body(&p);
        for xi in sample_sphere(n, 8, RngSeed::new(seed, 5)).unwrap() {
            let shadow = p.hyperplane_shadow_measures(xi.coords()).0;
            prop_assert!(rel(pi.support(xi.coords()), shadow) < 1e-9);
        }
    }

    #[test]
    fn samplers_are_pure_and_orthonormal(n in 2usize..=6, seed in any::<u64>(), stream in 0u64..8) {
        let k = 1 + (seed as usize % (n - 1));
        let s = RngSeed::new(seed, stream);
        let a = sample_grassmannian(n, k, 5, s).unwrap();
        prop_assert_eq!(&a, &sample_grassmannian(n, k, 5, s).unwrap());
        prop_assert!(a.iter().all(|f| f.orthonormality_error() < 1e-12));
        let d = sample_sphere(n, 5, s).unwrap();
        prop_assert!(d.iter().all(|x| (x.dot(x.coords()) - 1.0).abs() < 1e-12));
    }
}

#[test]
fn cube_shadows_are_zonogons() {
    // a hyperplane shadow of the cube has area 4 (|x_1| + |x_2| + |x_3|)
    let q = cube(3);
    for xi in sample_sphere(3, 50, RngSeed::new(9, 9)).unwrap() {
        let want = 4.0 * xi.coords().iter().map(|c| c.abs()).sum::<f64>();
        assert!(rel(q.hyperplane_shadow_measures(xi.coords()).0, want) < 1e-12);
    }
}
