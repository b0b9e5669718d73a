//! Convex polytopes: hulls, volumes, surface area measures, support and gauge
//! functions, shadows, inradius and linear images.

mod hull;
mod lp;
mod named;
pub(crate) mod planar;
mod spatial;

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::linalg::{dot, factorial, gram_schmidt, norm, rank};
use crate::sampling::{Direction, SubspaceBasis};

pub use named::{ball_approx, cross_polytope, cube, random_hull, regular_simplex, unit_cube};
pub(crate) use lp::chebyshev_center;

/// Adjacent boundary simplices whose opposite vertices lie within this
/// fraction of the scale from each other's hyperplanes belong to one facet.
const MERGE_TOL: f64 = 1e-8;
/// Threshold below which a facet is treated as parallel to a direction.
const VERTICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Facet {
    pub normal: Direction,
    pub offset: f64,
    pub measure: f64,
}

/// Atomic surface area measure: one atom per facet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceAreaMeasure {
    pub dim: usize,
    pub atoms: Vec<(Direction, f64)>,
}

impl SurfaceAreaMeasure {
    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|(_, a)| a).sum()
    }

    /// Norm of the barycenter `sum a_i u_i`; zero for a closed measure.
    pub fn closedness_defect(&self) -> f64 {
        let mut s = vec![0.0; self.dim];
        for (u, a) in &self.atoms {
            s.iter_mut().zip(u.coords()).for_each(|(x, c)| *x += a * c);
        }
        norm(&s)
    }
}

/// A codimension-2 face shared by two facets. `nu_a` is the unit normal of
/// the ridge inside facet `a` (pointing out of `a`), likewise `nu_b`.
#[derive(Debug, Clone)]
struct Ridge {
    a: usize,
    b: usize,
    measure: f64,
    nu_a: Vec<f64>,
    nu_b: Vec<f64>,
}

/// Ridges in struct-of-arrays form for the per-direction shadow sums.
#[derive(Debug, Clone, Default)]
struct RidgeTable {
    facets: Vec<[usize; 2]>,
    measure: Vec<f64>,
    /// `nu_a` then `nu_b`, `2 d` entries per ridge.
    nu: Vec<f64>,
}

impl RidgeTable {
    fn new(ridges: Vec<Ridge>, d: usize) -> Self {
        let mut t = RidgeTable::default();
        for r in ridges {
            t.facets.push([r.a, r.b]);
            t.measure.push(r.measure);
            t.nu.extend_from_slice(&r.nu_a);
            t.nu.extend_from_slice(&r.nu_b);
        }
        debug_assert_eq!(t.nu.len(), 2 * d * t.facets.len());
        t
    }
}

/// Boundary simplex of the triangulation, as indices into `points`.
#[derive(Debug, Clone)]
struct Cell {
    verts: Vec<usize>,
    area: f64,
    normal: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    facet_vertices: Vec<Vec<usize>>,
    ridges: RidgeTable,
    /// Facet normals, row-major, and facet measures, for the shadow sums.
    normal_table: Vec<f64>,
    measures: Vec<f64>,
    points: Vec<Vec<f64>>,
    cells: Vec<Cell>,
    interior: Vec<f64>,
    volume: f64,
    scale: f64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn simplex_volume(points: &[&Vec<f64>]) -> f64 {
    if points.len() <= 1 {
        return 1.0;
    }
    let base = points[0];
    let edges: Vec<Vec<f64>> = points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let (_, diag) = gram_schmidt(&edges);
    diag.iter().product::<f64>() / factorial(edges.len())
}

/// Convex hull of `points` in R^d.
///
/// Inputs with heavy coplanar degeneracy occasionally defeat the
/// incremental construction; those are retried once or twice after a
/// deterministic relative perturbation of 1e-11, then 1e-9.
pub fn convex_hull(points: &[Vec<f64>], d: usize) -> Result<Polytope> {
    let first = hull::quickhull(points, d).and_then(Polytope::from_raw);
    let Err(GeomError::Hull(_)) = first else {
        return first;
    };
    let scale = points.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut last = first;
    for (i, eps) in [1e-11, 1e-9].into_iter().enumerate() {
        let mut rng = crate::sampling::RngSeed::new(points.len() as u64, i as u64).rng();
        let joggled: Vec<Vec<f64>> = points
            .iter()
            .map(|p| p.iter().map(|x| x + eps * scale * rng.gen_range(-1.0..1.0)).collect())
            .collect();
        last = hull::quickhull(&joggled, d).and_then(Polytope::from_raw);
        if last.is_ok() {
            break;
        }
    }
    last
}

impl Polytope {
    fn from_raw(raw: hull::RawHull) -> Result<Self> {
        let d = raw.dim;
        let sims = &raw.simplices;
        let tol = MERGE_TOL * raw.scale;

        let mut uf = UnionFind((0..sims.len()).collect());
        for (s, sim) in sims.iter().enumerate() {
            for (j, &t) in sim.neighbors.iter().enumerate() {
                if t <= s {
                    continue;
                }
                let other = &sims[t];
                let far_t = other
                    .verts
                    .iter()
                    .find(|v| !sim.verts.contains(v))
                    .ok_or_else(|| GeomError::Hull("neighboring simplices share every vertex".into()))?;
                let far_s = sim.verts[j];
                let dt = (dot(&sim.normal, &raw.points[*far_t]) - sim.offset).abs();
                let ds = (dot(&other.normal, &raw.points[far_s]) - other.offset).abs();
                if dt < tol && ds < tol {
                    uf.union(s, t);
                }
            }
        }

        let mut facet_of = vec![usize::MAX; sims.len()];
        let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
        let mut area_vecs: Vec<Vec<f64>> = Vec::new();
        let mut members: Vec<BTreeSet<usize>> = Vec::new();
        for (s, sim) in sims.iter().enumerate() {
            let r = uf.find(s);
            let next = roots.len();
            let f = *roots.entry(r).or_insert(next);
            if f == area_vecs.len() {
                area_vecs.push(vec![0.0; d]);
                members.push(BTreeSet::new());
            }
            facet_of[s] = f;
            area_vecs[f].iter_mut().zip(&sim.normal).for_each(|(a, n)| *a += sim.area * n);
            members[f].extend(sim.verts.iter().copied());
        }

        let mut normals = Vec::with_capacity(area_vecs.len());
        let mut measures = Vec::with_capacity(area_vecs.len());
        for av in &area_vecs {
            let m = norm(av);
            if !(m > 0.0) {
                return Err(GeomError::Hull("facet with zero area".into()));
            }
            normals.push(av.iter().map(|x| x / m).collect::<Vec<f64>>());
            measures.push(m);
        }

        // extreme points: incident facet normals span R^d
        let mut incident: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (s, sim) in sims.iter().enumerate() {
            for &v in &sim.verts {
                incident.entry(v).or_default().insert(facet_of[s]);
            }
        }
        let mut vertex_index: BTreeMap<usize, usize> = BTreeMap::new();
        for (&p, fs) in &incident {
            let ns: Vec<Vec<f64>> = fs.iter().map(|&f| normals[f].clone()).collect();
            if rank(&ns, 1e-7) >= d {
                let next = vertex_index.len();
                vertex_index.insert(p, next);
            }
        }
        let vertices: Vec<Vec<f64>> = vertex_index.keys().map(|&p| raw.points[p].clone()).collect();

        let mut facets = Vec::with_capacity(normals.len());
        let mut facet_vertices = Vec::with_capacity(normals.len());
        for (f, u) in normals.iter().enumerate() {
            let vs: Vec<usize> = members[f].iter().filter_map(|p| vertex_index.get(p).copied()).collect();
            let offset = members[f].iter().map(|&p| dot(u, &raw.points[p])).fold(f64::MIN, f64::max);
            facets.push(Facet { normal: Direction::new(u.clone())?, offset, measure: measures[f] });
            facet_vertices.push(vs);
        }

        let mut ridge_measure: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (s, sim) in sims.iter().enumerate() {
            for (j, &t) in sim.neighbors.iter().enumerate() {
                let (fa, fb) = (facet_of[s], facet_of[t]);
                if t <= s || fa == fb {
                    continue;
                }
                let pts: Vec<&Vec<f64>> =
                    sim.verts.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| &raw.points[v]).collect();
                *ridge_measure.entry((fa.min(fb), fa.max(fb))).or_insert(0.0) += simplex_volume(&pts);
            }
        }
        let ridges: Vec<Ridge> = ridge_measure
            .into_iter()
            .map(|((a, b), measure)| {
                let (ua, ub) = (&normals[a], &normals[b]);
                let c = dot(ua, ub);
                let mut nu_a: Vec<f64> = ub.iter().zip(ua).map(|(x, y)| x - c * y).collect();
                let mut nu_b: Vec<f64> = ua.iter().zip(ub).map(|(x, y)| x - c * y).collect();
                let (la, lb) = (norm(&nu_a), norm(&nu_b));
                nu_a.iter_mut().for_each(|x| *x /= la);
                nu_b.iter_mut().for_each(|x| *x /= lb);
                Ridge { a, b, measure, nu_a, nu_b }
            })
            .collect();

        // compact the triangulation to the points it uses
        let mut used: BTreeMap<usize, usize> = BTreeMap::new();
        for sim in sims {
            for &v in &sim.verts {
                let next = used.len();
                used.entry(v).or_insert(next);
            }
        }
        let mut points = vec![Vec::new(); used.len()];
        for (&old, &new) in &used {
            points[new] = raw.points[old].clone();
        }
        let cells: Vec<Cell> = sims
            .iter()
            .map(|s| Cell { verts: s.verts.iter().map(|v| used[v]).collect(), area: s.area, normal: s.normal.clone() })
            .collect();

        let interior = raw.interior;
        let volume = cells
            .iter()
            .map(|c| c.area * (dot(&c.normal, &points[c.verts[0]]) - dot(&c.normal, &interior)))
            .sum::<f64>()
            / d as f64;
        let scale = vertices
            .iter()
            .map(|v| v.iter().zip(&interior).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max);

        let normal_table: Vec<f64> = normals.iter().flatten().copied().collect();
        let ridges = RidgeTable::new(ridges, d);
        Ok(Polytope {
            dim: d,
            vertices,
            facets,
            facet_vertices,
            ridges,
            normal_table,
            measures,
            points,
            cells,
            interior,
            volume,
            scale,
        })
    }

    /// Polytope `{x : <u_i, x> <= b_i}`; normals need not be unit.
    pub fn from_hrep(normals: &[Vec<f64>], offsets: &[f64]) -> Result<Self> {
        let n = normals.first().map(|u| u.len()).ok_or(GeomError::EmptyInput)?;
        if normals.len() != offsets.len() || normals.iter().any(|u| u.len() != n) {
            return Err(GeomError::InvalidDimension("inconsistent half-space data".into()));
        }
        let mut units = Vec::with_capacity(normals.len());
        let mut bs = Vec::with_capacity(normals.len());
        for (u, &b) in normals.iter().zip(offsets) {
            let l = norm(u);
            if !(l > 0.0) {
                return Err(GeomError::Parse("zero half-space normal".into()));
            }
            units.push(u.iter().map(|x| x / l).collect::<Vec<f64>>());
            bs.push(b / l);
        }
        let (r, c) = chebyshev_center(&units, &bs, n)?;
        if !(r > 1e-12) {
            return Err(GeomError::DegenerateInput { affine_dim: n - 1, expected: n });
        }
        let dual: Vec<Vec<f64>> =
            units.iter().zip(&bs).map(|(u, b)| { let s = b - dot(u, &c); u.iter().map(|x| x / s).collect() }).collect();
        let polar = convex_hull(&dual, n)?;
        let back = polar.polar()?;
        let shifted: Vec<Vec<f64>> = back.vertices.iter().map(|v| v.iter().zip(&c).map(|(a, b)| a + b).collect()).collect();
        convex_hull(&shifted, n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Indices into `vertices()` of the vertices on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> &[usize] {
        &self.facet_vertices[i]
    }

    /// A point strictly inside the polytope.
    pub fn interior_point(&self) -> &[f64] {
        &self.interior
    }

    /// Tolerance scale: largest distance from the interior point to a vertex.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.measure).sum()
    }

    pub fn surface_measure(&self) -> SurfaceAreaMeasure {
        SurfaceAreaMeasure { dim: self.dim, atoms: self.facets.iter().map(|f| (f.normal.clone(), f.measure)).collect() }
    }

    pub fn support(&self, x: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(v, x)).fold(f64::MIN, f64::max)
    }

    /// Length of the shadow on the line spanned by `theta`.
    pub fn interval_shadow(&self, theta: &Direction) -> f64 {
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| theta.dot(v))
            .fold((f64::MAX, f64::MIN), |(lo, hi), t| (lo.min(t), hi.max(t)));
        hi - lo
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset > 1e-12 * self.scale)
    }

    /// Minkowski functional of the polytope at `theta`.
    pub fn gauge(&self, theta: &[f64]) -> Result<f64> {
        if !self.contains_origin_in_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(self.facets.iter().map(|f| f.normal.dot(theta) / f.offset).fold(f64::MIN, f64::max))
    }

    pub fn polar(&self) -> Result<Polytope> {
        if !self.contains_origin_in_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        let pts: Vec<Vec<f64>> =
            self.facets.iter().map(|f| f.normal.coords().iter().map(|x| x / f.offset).collect()).collect();
        convex_hull(&pts, self.dim)
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(|v| norm(v)).fold(0.0, f64::max)
    }

    /// Radius and center of the largest inscribed ball.
    pub fn inradius(&self) -> Result<(f64, Vec<f64>)> {
        let normals: Vec<Vec<f64>> = self.facets.iter().map(|f| f.normal.coords().to_vec()).collect();
        let offsets: Vec<f64> = self.facets.iter().map(|f| f.offset).collect();
        chebyshev_center(&normals, &offsets, self.dim)
    }

    /// Centroid and covariance `E[(x - c)(x - c)^T]` of the uniform measure.
    pub fn centroid_and_covariance(&self) -> (Vec<f64>, DMatrix<f64>) {
        let d = self.dim;
        let c = &self.interior;
        let mut first = DVector::<f64>::zeros(d);
        let mut second = DMatrix::<f64>::zeros(d, d);
        let mut total = 0.0;
        for cell in &self.cells {
            let ws: Vec<DVector<f64>> = cell
                .verts
                .iter()
                .map(|&v| DVector::from_iterator(d, self.points[v].iter().zip(c).map(|(a, b)| a - b)))
                .collect();
            let vol = cell.area * dot(&cell.normal, ws[0].as_slice()) / d as f64;
            let sum: DVector<f64> = ws.iter().fold(DVector::zeros(d), |acc, w| acc + w);
            let mut outer = &sum * sum.transpose();
            for w in &ws {
                outer += w * w.transpose();
            }
            total += vol;
            first += &sum * (vol / (d + 1) as f64);
            second += outer * (vol / ((d + 1) * (d + 2)) as f64);
        }
        let mean = first / total;
        let cov = second / total - &mean * mean.transpose();
        (mean.iter().zip(c).map(|(m, ci)| m + ci).collect(), cov)
    }

    pub fn translate(&self, shift: &[f64]) -> Result<Polytope> {
        let pts: Vec<Vec<f64>> = self.vertices.iter().map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect()).collect();
        convex_hull(&pts, self.dim)
    }

    pub fn transform(&self, t: &DMatrix<f64>) -> Result<Polytope> {
        self.check_matrix(t)?;
        let pts: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| (t * DVector::from_column_slice(v)).iter().copied().collect())
            .collect();
        convex_hull(&pts, self.dim)
    }

    fn check_matrix(&self, t: &DMatrix<f64>) -> Result<f64> {
        if t.nrows() != self.dim || t.ncols() != self.dim {
            return Err(GeomError::InvalidDimension(format!(
                "{}x{} matrix applied in R^{}",
                t.nrows(),
                t.ncols(),
                self.dim
            )));
        }
        let det = t.determinant();
        if !(det.abs() > 1e-12) {
            return Err(GeomError::SingularMatrix { det });
        }
        Ok(det)
    }

    /// `S(TK) = |det T| sum a_i |T^{-T} u_i|` without rebuilding the hull.
    pub fn surface_area_under_transform(&self, t: &DMatrix<f64>) -> Result<f64> {
        let det = self.check_matrix(t)?;
        let inv_t = t.clone().try_inverse().ok_or(GeomError::SingularMatrix { det })?.transpose();
        Ok(det.abs()
            * self
                .facets
                .iter()
                .map(|f| f.measure * (&inv_t * DVector::from_column_slice(f.normal.coords())).norm())
                .sum::<f64>())
    }

    /// `(n-1)`-volume of the shadow on `xi^perp` by Cauchy's formula.
    pub fn hyperplane_shadow_volume(&self, xi: &[f64]) -> f64 {
        0.5 * self.normal_table.chunks_exact(self.dim).zip(&self.measures).map(|(u, a)| a * dot(u, xi).abs()).sum::<f64>()
    }

    /// Surface area of the shadow on `xi^perp`, summed over silhouette
    /// ridges; facets parallel to `xi` contribute their own shadows.
    pub fn hyperplane_shadow_surface(&self, xi: &[f64]) -> f64 {
        self.hyperplane_shadow_measures(xi).1
    }

    /// Volume and surface area of the shadow on `xi^perp` in one pass.
    pub fn hyperplane_shadow_measures(&self, xi: &[f64]) -> (f64, f64) {
        let d = self.dim;
        let s: Vec<f64> = self.normal_table.chunks_exact(d).map(|u| dot(u, xi)).collect();
        let volume = 0.5 * s.iter().zip(&self.measures).map(|(h, a)| a * h.abs()).sum::<f64>();
        // 0 below, 1 vertical, 2 above
        let code: Vec<u8> = s
            .iter()
            .map(|&h| if h > VERTICAL_TOL { 2 } else if h < -VERTICAL_TOL { 0 } else { 1 })
            .collect();
        let mut total = 0.0;
        let table = &self.ridges;
        for (i, &[a, b]) in table.facets.iter().enumerate() {
            let (ca, cb) = (code[a], code[b]);
            if ca == cb && ca != 1 {
                continue;
            }
            let nu = &table.nu[2 * d * i..2 * d * (i + 1)];
            let sa = s[a];
            if ca + cb == 2 && ca != 1 {
                let t = dot(&nu[..d], xi);
                total += table.measure[i] * (sa * sa + t * t).sqrt();
            }
            if ca == 1 {
                total += 0.5 * table.measure[i] * dot(&nu[..d], xi).abs();
            }
            if cb == 1 {
                total += 0.5 * table.measure[i] * dot(&nu[d..], xi).abs();
            }
        }
        (volume, total)
    }

    fn check_subspace(&self, f: &SubspaceBasis) -> Result<()> {
        if f.dim_ambient() != self.dim {
            return Err(GeomError::InvalidDimension(format!(
                "subspace of R^{} used with a body in R^{}",
                f.dim_ambient(),
                self.dim
            )));
        }
        Ok(())
    }

    /// The shadow `P_F K` in frame coordinates, for `2 <= k <= n - 1`.
    pub fn project(&self, f: &SubspaceBasis) -> Result<Polytope> {
        self.check_subspace(f)?;
        let k = f.dim_sub();
        if k < 2 || k >= self.dim {
            return Err(GeomError::InvalidDimension(format!(
                "project needs 2 <= k <= n - 1 (got k = {k}); use interval_shadow for lines"
            )));
        }
        let pts: Vec<Vec<f64>> = self.vertices.iter().map(|v| f.coordinates_of(v)).collect();
        convex_hull(&pts, k)
    }

    fn planar_shadow(&self, f: &SubspaceBasis) -> (f64, f64) {
        let rows = f.rows();
        let mut pts: Vec<[f64; 2]> = self.vertices.iter().map(|v| [dot(&rows[0], v), dot(&rows[1], v)]).collect();
        planar::hull_area_perimeter(&mut pts)
    }

    fn spatial_shadow(&self, f: &SubspaceBasis) -> Result<(f64, f64)> {
        let rows = f.rows();
        let pts: Vec<[f64; 3]> =
            self.vertices.iter().map(|v| [dot(&rows[0], v), dot(&rows[1], v), dot(&rows[2], v)]).collect();
        match spatial::hull_volume_surface(&pts) {
            Some(m) => Ok(m),
            None => {
                let p = self.project(f)?;
                Ok((p.volume(), p.surface_area()))
            }
        }
    }

    /// k-volume of `P_F K` for any `1 <= k <= n`.
    pub fn shadow_volume(&self, f: &SubspaceBasis) -> Result<f64> {
        self.check_subspace(f)?;
        if f.dim_sub() == 1 {
            return Ok(self.interval_shadow(&Direction::new(f.rows()[0].clone())?));
        }
        Ok(self.shadow_measures(f)?.0)
    }

    /// Surface area of `P_F K` for `2 <= k <= n`.
    pub fn shadow_surface(&self, f: &SubspaceBasis) -> Result<f64> {
        Ok(self.shadow_measures(f)?.1)
    }

    /// k-volume and surface area of `P_F K` from one projection, `2 <= k <= n`.
    pub fn shadow_measures(&self, f: &SubspaceBasis) -> Result<(f64, f64)> {
        self.check_subspace(f)?;
        let (n, k) = (self.dim, f.dim_sub());
        match k {
            _ if k == n => Ok((self.volume, self.surface_area())),
            1 => Err(GeomError::InvalidDimension("surface area of a one-dimensional shadow".into())),
            _ if k == n - 1 => Ok(self.hyperplane_shadow_measures(f.normal().expect("hyperplane").coords())),
            2 => Ok(self.planar_shadow(f)),
            3 => self.spatial_shadow(f),
            _ => {
                let p = self.project(f)?;
                Ok((p.volume(), p.surface_area()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{sample_sphere, RngSeed};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn square_with_center_point() {
        let pts = vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0], vec![0.0, 0.0]];
        let p = convex_hull(&pts, 2).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert!(close(p.volume(), 4.0, 1e-12));
    }

    #[test]
    fn cube_facets_merge() {
        let q = cube(3);
        assert_eq!(q.vertices().len(), 8);
        assert_eq!(q.facets().len(), 6);
        assert!(q.facets().iter().all(|f| close(f.measure, 4.0, 1e-12) && close(f.offset, 1.0, 1e-12)));
        assert!(q.facets().iter().enumerate().all(|(i, _)| q.facet_vertices(i).len() == 4));
        assert!(close(q.volume(), 8.0, 1e-12));
        assert_eq!(q.ridges.facets.len(), 12);
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let mut pts = cube(4).vertices().to_vec();
        pts.push(vec![0.0, 0.0, 0.0, 1.0]);
        pts.push(vec![0.0, 0.2, 0.1, 0.0]);
        pts.push(vec![1.0, 1.0, 0.0, 0.0]);
        let p = convex_hull(&pts, 4).unwrap();
        assert_eq!(p.vertices().len(), 16);
        assert_eq!(p.facets().len(), 8);
    }

    #[test]
    fn hyperplane_shadow_surface_matches_hull_route() {
        let k = random_hull(4, 16, 3).unwrap();
        for xi in sample_sphere(4, 10, RngSeed::new(1, 1)).unwrap() {
            let via_hull = k.project(&SubspaceBasis::hyperplane(&xi)).unwrap().surface_area();
            assert!(close(k.hyperplane_shadow_surface(xi.coords()), via_hull, 1e-9));
            let hull_vol = k.project(&SubspaceBasis::hyperplane(&xi)).unwrap().volume();
            assert!(close(k.hyperplane_shadow_volume(xi.coords()), hull_vol, 1e-9));
        }
    }

    #[test]
    fn vertical_facets_are_counted() {
        let q = cube(3);
        assert!(close(q.hyperplane_shadow_surface(&[0.0, 0.0, 1.0]), 8.0, 1e-12));
        assert!(close(q.hyperplane_shadow_surface(&[1.0, 1.0, 0.0].map(|x: f64| x / 2f64.sqrt())), 4.0 + 4.0 * 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn covariance_is_centered() {
        let (c, cov) = unit_cube(3).centroid_and_covariance();
        assert!(norm(&c) < 1e-14);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 / 12.0 } else { 0.0 };
                assert!((cov[(i, j)] - want).abs() < 1e-14);
            }
        }
    }
}
