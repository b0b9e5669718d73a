//! Andrew's monotone chain for planar shadows.

/// Area and perimeter of the convex hull of planar points.
pub(crate) fn hull_area_perimeter(points: &mut [[f64; 2]]) -> (f64, f64) {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(points.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(points.iter()) } else { Box::new(points.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let m = hull.len();
    if m < 3 {
        let per = if m == 2 { 2.0 * ((hull[0][0] - hull[1][0]).hypot(hull[0][1] - hull[1][1])) } else { 0.0 };
        return (0.0, per);
    }
    let mut area = 0.0;
    let mut per = 0.0;
    for i in 0..m {
        let a = hull[i];
        let b = hull[(i + 1) % m];
        area += a[0] * b[1] - a[1] * b[0];
        per += (b[0] - a[0]).hypot(b[1] - a[1]);
    }
    (0.5 * area.abs(), per)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_edge_points() {
        let mut pts = vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0], [1.0, 1.0], [1.0, 0.0], [0.5, 0.5]];
        let (a, p) = hull_area_perimeter(&mut pts);
        assert!((a - 4.0).abs() < 1e-14);
        assert!((p - 8.0).abs() < 1e-14);
    }
}
