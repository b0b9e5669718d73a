//! Incremental quickhull in R^3 that keeps only what volume and surface area
//! need. Returns `None` on degenerate or numerically inconsistent input so
//! the caller can fall back to the general hull.

type P3 = [f64; 3];

const EPS: f64 = 1e-10;

fn sub(a: &P3, b: &P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &P3, b: &P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &P3, b: &P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

struct Face {
    v: [usize; 3],
    n: P3,
    off: f64,
    area: f64,
    /// `nb[j]` shares the edge `v[j] -> v[(j + 1) % 3]`.
    nb: [usize; 3],
    alive: bool,
    outside: Vec<usize>,
}

struct Hull<'a> {
    pts: &'a [P3],
    interior: P3,
    eps: f64,
    faces: Vec<Face>,
    visible: Vec<usize>,
    horizon: Vec<(usize, usize, usize)>,
    orphans: Vec<usize>,
}

impl Hull<'_> {
    /// Face through `a, b, c` with its normal away from the interior point.
    fn face(&self, a: usize, b: usize, c: usize, orient: bool) -> Option<Face> {
        let (pa, pb, pc) = (&self.pts[a], &self.pts[b], &self.pts[c]);
        let mut n = cross(&sub(pb, pa), &sub(pc, pa));
        let len = dot(&n, &n).sqrt();
        if !(len > 0.0) {
            return None;
        }
        n.iter_mut().for_each(|x| *x /= len);
        let mut v = [a, b, c];
        let inward = dot(&n, &sub(&self.interior, pa)) > 0.0;
        if inward {
            if !orient {
                return None;
            }
            v.swap(1, 2);
            n.iter_mut().for_each(|x| *x = -*x);
        }
        let off = dot(&n, pa);
        Some(Face { v, n, off, area: 0.5 * len, nb: [usize::MAX; 3], alive: true, outside: Vec::new() })
    }

    fn dist(&self, f: usize, p: usize) -> f64 {
        dot(&self.faces[f].n, &self.pts[p]) - self.faces[f].off
    }

    fn assign(&mut self, p: usize, candidates: std::ops::Range<usize>) {
        let mut best = (usize::MAX, self.eps);
        for f in candidates {
            let d = self.dist(f, p);
            if d > best.1 {
                best = (f, d);
            }
        }
        if best.0 != usize::MAX {
            self.faces[best.0].outside.push(p);
        }
    }

    fn edge_index(&self, f: usize, from: usize, to: usize) -> Option<usize> {
        let v = &self.faces[f].v;
        (0..3).find(|&j| v[j] == from && v[(j + 1) % 3] == to)
    }

    fn add_point(&mut self, f0: usize, p: usize, stamp: &mut [usize], round: usize) -> Option<()> {
        // stamp: round * 2 = visible, round * 2 + 1 = checked and hidden
        let visible_mark = 2 * round;
        let hidden_mark = 2 * round + 1;
        let mut visible = std::mem::take(&mut self.visible);
        let mut horizon = std::mem::take(&mut self.horizon);
        visible.clear();
        horizon.clear();
        visible.push(f0);
        stamp[f0] = visible_mark;
        let mut i = 0;
        while i < visible.len() {
            let f = visible[i];
            i += 1;
            for j in 0..3 {
                let g = self.faces[f].nb[j];
                if stamp[g] != visible_mark && stamp[g] != hidden_mark {
                    if self.dist(g, p) > self.eps {
                        stamp[g] = visible_mark;
                        visible.push(g);
                    } else {
                        stamp[g] = hidden_mark;
                    }
                }
                if stamp[g] == hidden_mark {
                    let v = self.faces[f].v;
                    horizon.push((v[j], v[(j + 1) % 3], g));
                }
            }
        }

        let first = self.faces.len();
        for &(u, v, g) in &horizon {
            let mut face = self.face(u, v, p, false)?;
            if face.v != [u, v, p] {
                return None;
            }
            let id = self.faces.len();
            face.nb[0] = g;
            let back = self.edge_index(g, v, u)?;
            self.faces[g].nb[back] = id;
            self.faces.push(face);
        }
        let count = horizon.len();
        for a in 0..count {
            let (_, va, _) = horizon[a];
            let b = (0..count).find(|&b| horizon[b].0 == va)?;
            self.faces[first + a].nb[1] = first + b;
            self.faces[first + b].nb[2] = first + a;
        }

        let mut orphans = std::mem::take(&mut self.orphans);
        orphans.clear();
        for &f in &visible {
            self.faces[f].alive = false;
            orphans.append(&mut self.faces[f].outside);
        }
        for &q in &orphans {
            if q != p {
                self.assign(q, first..first + count);
            }
        }
        self.visible = visible;
        self.horizon = horizon;
        self.orphans = orphans;
        Some(())
    }
}

/// Volume and surface area of the convex hull of `pts`.
pub(crate) fn hull_volume_surface(pts: &[P3]) -> Option<(f64, f64)> {
    if pts.len() < 4 {
        return None;
    }
    let m = pts.len() as f64;
    let centroid = pts.iter().fold([0.0; 3], |acc, p| [acc[0] + p[0] / m, acc[1] + p[1] / m, acc[2] + p[2] / m]);
    let far_from = |q: &P3| -> usize {
        (0..pts.len()).max_by(|&a, &b| {
            let (da, db) = (sub(&pts[a], q), sub(&pts[b], q));
            dot(&da, &da).total_cmp(&dot(&db, &db))
        })
        .unwrap()
    };
    let i0 = far_from(&centroid);
    let scale = dot(&sub(&pts[i0], &centroid), &sub(&pts[i0], &centroid)).sqrt();
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let i1 = far_from(&pts[i0]);
    let axis = sub(&pts[i1], &pts[i0]);
    let i2 = (0..pts.len())
        .max_by(|&a, &b| {
            let ca = cross(&axis, &sub(&pts[a], &pts[i0]));
            let cb = cross(&axis, &sub(&pts[b], &pts[i0]));
            dot(&ca, &ca).total_cmp(&dot(&cb, &cb))
        })
        .unwrap();
    let plane = cross(&axis, &sub(&pts[i2], &pts[i0]));
    let pl = dot(&plane, &plane).sqrt();
    if !(pl > 1e-9 * scale * scale) {
        return None;
    }
    let i3 = (0..pts.len())
        .max_by(|&a, &b| dot(&plane, &sub(&pts[a], &pts[i0])).abs().total_cmp(&dot(&plane, &sub(&pts[b], &pts[i0])).abs()))
        .unwrap();
    if !(dot(&plane, &sub(&pts[i3], &pts[i0])).abs() / pl > 1e-9 * scale) {
        return None;
    }
    let tet = [i0, i1, i2, i3];
    let interior = tet.iter().fold([0.0; 3], |acc, &i| {
        [acc[0] + pts[i][0] / 4.0, acc[1] + pts[i][1] / 4.0, acc[2] + pts[i][2] / 4.0]
    });
    let mut h = Hull {
        pts,
        interior,
        eps: EPS * scale,
        faces: Vec::new(),
        visible: Vec::new(),
        horizon: Vec::new(),
        orphans: Vec::new(),
    };
    for skip in 0..4 {
        let v: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| tet[i]).collect();
        let face = h.face(v[0], v[1], v[2], true)?;
        h.faces.push(face);
    }
    for f in 0..4 {
        for j in 0..3 {
            let v = h.faces[f].v;
            let g = (0..4).find(|&g| g != f && h.edge_index(g, v[(j + 1) % 3], v[j]).is_some())?;
            h.faces[f].nb[j] = g;
        }
    }
    for p in 0..pts.len() {
        if !tet.contains(&p) {
            h.assign(p, 0..4);
        }
    }

    let mut stamp: Vec<usize> = Vec::new();
    let mut round = 1;
    let mut cursor = 0;
    while cursor < h.faces.len() {
        if !h.faces[cursor].alive || h.faces[cursor].outside.is_empty() {
            cursor += 1;
            continue;
        }
        let f = cursor;
        let (k, _) = h.faces[f]
            .outside
            .iter()
            .enumerate()
            .map(|(k, &q)| (k, h.dist(f, q)))
            .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
        let p = h.faces[f].outside.swap_remove(k);
        if stamp.len() < h.faces.len() + 64 {
            stamp.resize(2 * h.faces.len() + 64, 0);
        }
        h.add_point(f, p, &mut stamp, round)?;
        round += 1;
    }

    let mut used = vec![false; pts.len()];
    let (mut volume, mut surface, mut count) = (0.0, 0.0, 0usize);
    for f in h.faces.iter().filter(|f| f.alive) {
        f.v.iter().for_each(|&v| used[v] = true);
        surface += f.area;
        volume += f.area * (f.off - dot(&f.n, &h.interior)) / 3.0;
        count += 1;
    }
    let verts = used.iter().filter(|&&u| u).count();
    // a triangulated sphere has F = 2V - 4
    if count + 4 != 2 * verts || !(volume > 0.0) {
        return None;
    }
    Some((volume, surface))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_measures() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push([(i & 1) as f64 * 2.0 - 1.0, ((i >> 1) & 1) as f64 * 2.0 - 1.0, ((i >> 2) & 1) as f64 * 2.0 - 1.0]);
        }
        pts.push([0.1, 0.2, -0.3]);
        pts.push([1.0, 0.0, 0.0]);
        let (v, s) = hull_volume_surface(&pts).unwrap();
        assert!((v - 8.0).abs() < 1e-12 && (s - 24.0).abs() < 1e-12);
    }

    #[test]
    fn flat_input_is_refused() {
        let pts = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert!(hull_volume_surface(&pts).is_none());
    }
}
