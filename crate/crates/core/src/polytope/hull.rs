//! Quickhull in dimension d >= 2 producing a triangulated boundary.
//!
//! Facets are simplices with outward unit normals oriented against a fixed
//! interior point. Visibility uses a thick plane of half-width `eps * scale`:
//! points within it count as coplanar and never make a facet visible, so
//! coplanar input (cube corners, zonotope vertices) yields coplanar simplices
//! that are merged later rather than slivers.

use std::collections::HashMap;

use crate::error::{GeomError, Result};
use crate::linalg::{dot, factorial, gram_schmidt};

pub(crate) const VISIBILITY_EPS: f64 = 1e-10;

#[derive(Debug, Clone)]
pub(crate) struct HullSimplex {
    pub verts: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
    pub area: f64,
    /// `neighbors[j]` shares the ridge opposite `verts[j]`.
    pub neighbors: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct RawHull {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub simplices: Vec<HullSimplex>,
    pub interior: Vec<f64>,
    pub scale: f64,
}

struct WorkFacet {
    simplex: HullSimplex,
    outside: Vec<usize>,
    alive: bool,
}

struct Builder<'a> {
    d: usize,
    pts: &'a [Vec<f64>],
    interior: Vec<f64>,
    eps: f64,
    facets: Vec<WorkFacet>,
}

impl<'a> Builder<'a> {
    fn dist(&self, f: usize, p: usize) -> f64 {
        let s = &self.facets[f].simplex;
        dot(&s.normal, &self.pts[p]) - s.offset
    }

    fn make_simplex(&self, verts: Vec<usize>) -> Result<HullSimplex> {
        let d = self.d;
        let base = &self.pts[verts[0]];
        let edges: Vec<Vec<f64>> = verts[1..]
            .iter()
            .map(|&v| self.pts[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut spanning = edges;
        spanning.push(base.iter().zip(&self.interior).map(|(a, c)| a - c).collect());
        let (q, diag) = gram_schmidt(&spanning);
        let normal = q[d - 1].clone();
        if !(diag[d - 1] > 0.0) || normal.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::Hull("interior point lies on a facet hyperplane".into()));
        }
        let area = diag[..d - 1].iter().product::<f64>() / factorial(d - 1);
        let offset = dot(&normal, base);
        Ok(HullSimplex { verts, normal, offset, area, neighbors: vec![usize::MAX; d] })
    }

    fn push(&mut self, simplex: HullSimplex) -> usize {
        self.facets.push(WorkFacet { simplex, outside: Vec::new(), alive: true });
        self.facets.len() - 1
    }

    /// Links the ridges of `ids` that are shared among them.
    fn link(&mut self, ids: &[usize], skip_last: bool) {
        let mut open: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for &f in ids {
            let verts = self.facets[f].simplex.verts.clone();
            let upto = if skip_last { verts.len() - 1 } else { verts.len() };
            for j in 0..upto {
                let mut key: Vec<usize> = verts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
                key.sort_unstable();
                if let Some((g, jg)) = open.remove(&key) {
                    self.facets[f].simplex.neighbors[j] = g;
                    self.facets[g].simplex.neighbors[jg] = f;
                } else {
                    open.insert(key, (f, j));
                }
            }
        }
    }

    fn assign(&mut self, p: usize, candidates: &[usize]) -> bool {
        let mut best: Option<(usize, f64)> = None;
        for &f in candidates {
            if !self.facets[f].alive {
                continue;
            }
            let dd = self.dist(f, p);
            if dd > self.eps && best.map_or(true, |(_, b)| dd > b) {
                best = Some((f, dd));
            }
        }
        if let Some((f, _)) = best {
            self.facets[f].outside.push(p);
            true
        } else {
            false
        }
    }

    fn add_point(&mut self, f0: usize, p: usize) -> Result<()> {
        let d = self.d;
        let mut visible = vec![f0];
        let mut is_visible: HashMap<usize, bool> = HashMap::new();
        is_visible.insert(f0, true);
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            for j in 0..d {
                let g = self.facets[f].simplex.neighbors[j];
                let vis = match is_visible.get(&g) {
                    Some(&v) => v,
                    None => {
                        let v = self.dist(g, p) > self.eps;
                        is_visible.insert(g, v);
                        if v {
                            visible.push(g);
                        }
                        v
                    }
                };
                if !vis {
                    horizon.push((f, j));
                }
            }
        }

        let mut new_ids = Vec::with_capacity(horizon.len());
        for &(f, j) in &horizon {
            let s = &self.facets[f].simplex;
            let behind = s.neighbors[j];
            let mut verts: Vec<usize> = s.verts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
            verts.push(p);
            let mut simplex = self.make_simplex(verts)?;
            simplex.neighbors[d - 1] = behind;
            let id = self.push(simplex);
            let back = self.facets[behind]
                .simplex
                .neighbors
                .iter()
                .position(|&x| x == f)
                .ok_or_else(|| GeomError::Hull("inconsistent adjacency".into()))?;
            self.facets[behind].simplex.neighbors[back] = id;
            new_ids.push(id);
        }
        self.link(&new_ids, true);
        if new_ids.iter().any(|&f| self.facets[f].simplex.neighbors.contains(&usize::MAX)) {
            return Err(GeomError::Hull("horizon is not a closed ridge cycle".into()));
        }

        let mut orphans = Vec::new();
        for &f in &visible {
            self.facets[f].alive = false;
            orphans.append(&mut self.facets[f].outside);
        }
        for q in orphans {
            if q != p {
                self.assign(q, &new_ids);
            }
        }
        Ok(())
    }
}

/// Greedy initial simplex: farthest point from the centroid, then repeatedly
/// the point farthest from the affine span so far.
fn initial_simplex(pts: &[Vec<f64>], d: usize, scale: f64, centroid: &[f64]) -> Result<Vec<usize>> {
    let far = (0..pts.len())
        .max_by(|&a, &b| {
            let da: f64 = pts[a].iter().zip(centroid).map(|(x, c)| (x - c).powi(2)).sum();
            let db: f64 = pts[b].iter().zip(centroid).map(|(x, c)| (x - c).powi(2)).sum();
            da.total_cmp(&db)
        })
        .expect("non-empty");
    let mut chosen = vec![far];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for step in 1..=d {
        let mut best = (0usize, -1.0_f64);
        for (i, p) in pts.iter().enumerate() {
            let mut w: Vec<f64> = p.iter().zip(&pts[far]).map(|(a, b)| a - b).collect();
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
                }
            }
            let r = dot(&w, &w).sqrt();
            if r > best.1 {
                best = (i, r);
            }
        }
        if best.1 <= 1e-9 * scale {
            return Err(GeomError::DegenerateInput { affine_dim: step - 1, expected: d });
        }
        let mut w: Vec<f64> = pts[best.0].iter().zip(&pts[far]).map(|(a, b)| a - b).collect();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let r = dot(&w, &w).sqrt();
        basis.push(w.into_iter().map(|x| x / r).collect());
        chosen.push(best.0);
    }
    Ok(chosen)
}

/// Drops points within `tol` (max-norm) of an earlier one.
fn dedup(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(a.cmp(&b)));
    let mut keep = vec![true; points.len()];
    for (i, &a) in order.iter().enumerate() {
        if !keep[a] {
            continue;
        }
        for &b in &order[i + 1..] {
            if points[b][0] - points[a][0] > tol {
                break;
            }
            if keep[b] && points[a].iter().zip(&points[b]).all(|(x, y)| (x - y).abs() <= tol) {
                keep[b] = false;
            }
        }
    }
    points.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect()
}

pub(crate) fn quickhull(points: &[Vec<f64>], d: usize) -> Result<RawHull> {
    if !(2..=8).contains(&d) {
        return Err(GeomError::InvalidDimension(format!("hull dimension must be in 2..=8, got {d}")));
    }
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(GeomError::InvalidDimension(format!("point of length {} in R^{d}", bad.len())));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(GeomError::Hull("non-finite coordinate".into()));
    }
    let n_pts = points.len() as f64;
    let centroid: Vec<f64> = (0..d).map(|j| points.iter().map(|p| p[j]).sum::<f64>() / n_pts).collect();
    let scale = points
        .iter()
        .map(|p| p.iter().zip(&centroid).map(|(x, c)| (x - c).powi(2)).sum::<f64>().sqrt())
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(GeomError::DegenerateInput { affine_dim: 0, expected: d });
    }
    let unique = dedup(points, 1e-10 * scale);
    let points: &[Vec<f64>] = &unique;
    let chosen = initial_simplex(points, d, scale, &centroid)?;
    let interior: Vec<f64> =
        (0..d).map(|j| chosen.iter().map(|&i| points[i][j]).sum::<f64>() / (d + 1) as f64).collect();

    let mut b = Builder { d, pts: points, interior, eps: VISIBILITY_EPS * scale, facets: Vec::new() };
    let mut ids = Vec::with_capacity(d + 1);
    for skip in 0..=d {
        let verts: Vec<usize> = chosen.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        let s = b.make_simplex(verts)?;
        ids.push(b.push(s));
    }
    b.link(&ids, false);

    let mut pending: Vec<usize> = (0..points.len()).filter(|i| !chosen.contains(i)).collect();
    // Points can be lost when their facet dies while they are still above a
    // surviving facet; sweep until every point is inside.
    for _sweep in 0..64 {
        for &p in &pending {
            let alive: Vec<usize> = (0..b.facets.len()).filter(|&f| b.facets[f].alive).collect();
            b.assign(p, &alive);
        }
        let mut cursor = 0;
        while cursor < b.facets.len() {
            if !b.facets[cursor].alive || b.facets[cursor].outside.is_empty() {
                cursor += 1;
                continue;
            }
            let f = cursor;
            let (k, _) = b.facets[f]
                .outside
                .iter()
                .enumerate()
                .map(|(k, &q)| (k, b.dist(f, q)))
                .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
            let p = b.facets[f].outside.swap_remove(k);
            b.add_point(f, p)?;
            // new facets have larger ids; dead ones are skipped
        }
        let alive: Vec<usize> = (0..b.facets.len()).filter(|&f| b.facets[f].alive).collect();
        pending = (0..points.len())
            .filter(|&p| alive.iter().any(|&f| b.dist(f, p) > b.eps))
            .collect();
        if pending.is_empty() {
            break;
        }
    }
    if !pending.is_empty() {
        return Err(GeomError::Hull("points remained outside after repeated sweeps".into()));
    }

    let alive: Vec<usize> = (0..b.facets.len()).filter(|&f| b.facets[f].alive).collect();
    let mut remap = vec![usize::MAX; b.facets.len()];
    for (new, &old) in alive.iter().enumerate() {
        remap[old] = new;
    }
    let simplices = alive
        .iter()
        .map(|&f| {
            let mut s = b.facets[f].simplex.clone();
            s.neighbors.iter_mut().for_each(|g| *g = remap[*g]);
            s
        })
        .collect::<Vec<_>>();
    if simplices.iter().flat_map(|s| &s.neighbors).any(|&g| g == usize::MAX) {
        return Err(GeomError::Hull("dangling adjacency".into()));
    }
    let interior = b.interior;
    Ok(RawHull { dim: d, points: points.to_vec(), simplices, interior, scale })
}
