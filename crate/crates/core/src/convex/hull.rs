//! Convex hulls in dimensions 2, 3 and (by brute force) 4.

use crate::linalg::{hyperplane_normal, rank};
use crate::Vector;

/// A supporting hyperplane `{y : <normal, y> = offset}` with the indices of the
/// input points lying on it.
#[derive(Debug, Clone)]
pub struct HullFacet {
    pub normal: Vector,
    pub offset: f64,
    pub points: Vec<usize>,
}

/// Indices of the extreme points of a planar point set, counter-clockwise,
/// starting from the lexicographically smallest point. Collinear points on the
/// boundary are dropped.
pub fn hull_2d(points: &[Vector], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| (&points[*a] - &points[*b]).norm() <= tol);
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        let (o, a, b) = (&points[o], &points[a], &points[b]);
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    // A turn counts as strict only if the apex is farther than tol from the chord.
    let left = |o: usize, a: usize, b: usize| {
        let len = (&points[b] - &points[o]).norm();
        cross(o, a, b) > tol * len
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for &p in &idx {
        while hull.len() >= 2 && !left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in idx.iter().rev().skip(1) {
        while hull.len() >= lower && !left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn sub(a: &Vector, b: &Vector) -> Vector {
    a - b
}

/// Facets of the convex hull of a full-dimensional 3D point set, via an
/// incremental (beneath-beyond) construction on triangles followed by merging
/// of coplanar triangles. Returns `None` if the set is degenerate or the
/// construction loses consistency, in which case callers fall back to
/// [`hull_brute_force`].
pub fn hull_3d(points: &[Vector], tol: f64) -> Option<Vec<HullFacet>> {
    let n = points.len();
    if n < 4 {
        return None;
    }
    // Initial tetrahedron: two far points, the farthest from their line, the
    // farthest from that plane.
    let i0 = 0;
    let i1 = (0..n).max_by(|&a, &b| {
        sub(&points[a], &points[i0])
            .norm()
            .total_cmp(&sub(&points[b], &points[i0]).norm())
    })?;
    let d01 = sub(&points[i1], &points[i0]);
    if d01.norm() <= tol {
        return None;
    }
    let line_dist = |k: usize| {
        let w = sub(&points[k], &points[i0]);
        let along = w.dot(&d01) / d01.norm_squared();
        (w - &d01 * along).norm()
    };
    let i2 = (0..n).max_by(|&a, &b| line_dist(a).total_cmp(&line_dist(b)))?;
    if line_dist(i2) <= tol {
        return None;
    }
    let nrm = hyperplane_normal(&[d01.clone(), sub(&points[i2], &points[i0])])?;
    let plane_dist = |k: usize| nrm.dot(&sub(&points[k], &points[i0]));
    let i3 = (0..n).max_by(|&a, &b| plane_dist(a).abs().total_cmp(&plane_dist(b).abs()))?;
    if plane_dist(i3).abs() <= tol {
        return None;
    }

    struct Tri {
        v: [usize; 3],
        normal: Vector,
        offset: f64,
        alive: bool,
    }
    let make = |a: usize, b: usize, c: usize, inside: &Vector| -> Option<Tri> {
        let normal = hyperplane_normal(&[sub(&points[b], &points[a]), sub(&points[c], &points[a])])?;
        let offset = normal.dot(&points[a]);
        if normal.dot(inside) > offset {
            Some(Tri {
                v: [a, c, b],
                normal: -normal,
                offset: -offset,
                alive: true,
            })
        } else {
            Some(Tri {
                v: [a, b, c],
                normal,
                offset,
                alive: true,
            })
        }
    };
    let inside = (&points[i0] + &points[i1] + &points[i2] + &points[i3]) / 4.0;
    let mut tris: Vec<Tri> = vec![
        make(i0, i1, i2, &inside)?,
        make(i0, i1, i3, &inside)?,
        make(i0, i2, i3, &inside)?,
        make(i1, i2, i3, &inside)?,
    ];
    let seed = [i0, i1, i2, i3];
    for p in 0..n {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&t| tris[t].alive && tris[t].normal.dot(&points[p]) - tris[t].offset > tol)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Horizon: directed edges of visible triangles whose reverse is not on a
        // visible triangle.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &t in &visible {
            let v = tris[t].v;
            for k in 0..3 {
                edges.push((v[k], v[(k + 1) % 3]));
            }
        }
        let horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(a, b)| !edges.contains(&(b, a)))
            .cloned()
            .collect();
        for &t in &visible {
            tris[t].alive = false;
        }
        for (a, b) in horizon {
            let t = make(a, b, p, &inside)?;
            tris.push(t);
        }
    }
    let alive: Vec<&Tri> = tris.iter().filter(|t| t.alive).collect();
    // Merge coplanar triangles into facets.
    let mut facets: Vec<HullFacet> = Vec::new();
    for t in alive {
        if facets
            .iter()
            .any(|f| (&f.normal - &t.normal).norm() <= 1e3 * tol && (f.offset - t.offset).abs() <= 1e3 * tol)
        {
            continue;
        }
        facets.push(HullFacet {
            normal: t.normal.clone(),
            offset: t.offset,
            points: Vec::new(),
        });
    }
    for f in &mut facets {
        f.points = (0..n)
            .filter(|&k| (f.normal.dot(&points[k]) - f.offset).abs() <= 1e3 * tol)
            .collect();
    }
    // Sanity: every point is beneath every facet.
    for f in &facets {
        if points.iter().any(|p| f.normal.dot(p) - f.offset > 1e3 * tol) {
            return None;
        }
    }
    Some(facets)
}

/// Facets of the convex hull by enumerating all hyperplanes through `dim`
/// affinely independent points. Quadratic-power cost; used in dimension 4 and
/// as a fallback and test oracle in dimension 3.
pub fn hull_brute_force(points: &[Vector], tol: f64) -> Vec<HullFacet> {
    let n = points.len();
    let dim = points.first().map_or(0, |p| p.len());
    let mut facets: Vec<HullFacet> = Vec::new();
    let mut combo: Vec<usize> = (0..dim).collect();
    if n < dim {
        return facets;
    }
    loop {
        let base = &points[combo[0]];
        let spanning: Vec<Vector> = combo[1..].iter().map(|&k| &points[k] - base).collect();
        if let Some(normal) = hyperplane_normal(&spanning) {
            let offset = normal.dot(base);
            let s: Vec<f64> = points.iter().map(|p| normal.dot(p) - offset).collect();
            let max = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
            let oriented = if max <= tol {
                Some((normal, offset))
            } else if min >= -tol {
                Some((-normal, -offset))
            } else {
                None
            };
            if let Some((normal, offset)) = oriented {
                let known = facets.iter().any(|f| {
                    (&f.normal - &normal).norm() <= 1e3 * tol && (f.offset - offset).abs() <= 1e3 * tol
                });
                if !known {
                    let on: Vec<usize> = (0..n)
                        .filter(|&k| (normal.dot(&points[k]) - offset).abs() <= 1e3 * tol)
                        .collect();
                    let diffs: Vec<Vector> = on.iter().map(|&k| &points[k] - &points[on[0]]).collect();
                    let refs: Vec<&Vector> = diffs.iter().collect();
                    if rank(&refs, 1e-9) == dim - 1 {
                        facets.push(HullFacet {
                            normal,
                            offset,
                            points: on,
                        });
                    }
                }
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return facets;
            }
            i -= 1;
            if combo[i] < n - dim + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..dim {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Indices of points that are vertices of the hull described by `facets`: those
/// lying on facets whose normals span the whole space.
pub fn extreme_points(n_points: usize, dim: usize, facets: &[HullFacet]) -> Vec<usize> {
    (0..n_points)
        .filter(|&k| {
            let normals: Vec<&Vector> = facets
                .iter()
                .filter(|f| f.points.contains(&k))
                .map(|f| &f.normal)
                .collect();
            normals.len() >= dim && rank(&normals, 1e-9) == dim
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            vector(&[0.0, 0.0]),
            vector(&[1.0, 0.0]),
            vector(&[0.5, 0.0]),
            vector(&[1.0, 1.0]),
            vector(&[0.0, 1.0]),
            vector(&[0.4, 0.6]),
        ];
        let h = hull_2d(&pts, 1e-12);
        assert_eq!(h, vec![0, 1, 3, 4]);
    }

    #[test]
    fn cube_hull_merges_faces() {
        let mut pts = Vec::new();
        for i in 0..8 {
            let c = |b: usize| if i >> b & 1 == 1 { 1.0 } else { -1.0 };
            pts.push(vector(&[c(0), c(1), c(2)]));
        }
        pts.push(vector(&[0.0, 0.0, 1.0]));
        pts.push(vector(&[0.1, 0.2, -0.3]));
        let f = hull_3d(&pts, 1e-12).unwrap();
        assert_eq!(f.len(), 6);
        let ext = extreme_points(pts.len(), 3, &f);
        assert_eq!(ext, (0..8).collect::<Vec<_>>());
        let bf = hull_brute_force(&pts, 1e-12);
        assert_eq!(bf.len(), 6);
    }

    #[test]
    fn brute_force_tesseract() {
        let mut pts = Vec::new();
        for i in 0..16 {
            let c = |b: usize| if i >> b & 1 == 1 { 1.0 } else { -1.0 };
            pts.push(vector(&[c(0), c(1), c(2), c(3)]));
        }
        let f = hull_brute_force(&pts, 1e-12);
        assert_eq!(f.len(), 8);
        assert_eq!(extreme_points(16, 4, &f).len(), 16);
    }
}
