//! Quadrature rules on the circle and on the 2-sphere.
//!
//! Integrands in this crate are typically smooth except along great circles
//! `{u : <a, u> = 0}` (where the combinatorics of a projected polytope change).
//! Both rules accept such "cuts" and align their cells with them, so each cell
//! sees a smooth integrand and Gauss-type rules keep their order.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::error::Result;
use crate::Vector;

/// Quadrature resolution for boundary integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    /// Approximate number of nodes on the unit circle (n = 2).
    pub circle_nodes: usize,
    /// Icosahedral subdivision level of the base mesh on the 2-sphere (n = 3).
    pub sphere_level: u32,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            circle_nodes: 512,
            sphere_level: 3,
        }
    }
}

impl Resolution {
    pub fn new(circle_nodes: usize, sphere_level: u32) -> Self {
        Resolution {
            circle_nodes: circle_nodes.max(16),
            sphere_level,
        }
    }

    /// The next finer resolution (twice the circle nodes, one more sphere level).
    pub fn doubled(&self) -> Self {
        Resolution {
            circle_nodes: self.circle_nodes * 2,
            sphere_level: self.sphere_level + 1,
        }
    }
}

/// A quadrature node `u` on the unit sphere with weight `weight`.
#[derive(Debug, Clone)]
pub struct SphereNode {
    pub u: Vector,
    pub weight: f64,
}

/// Sum of `f` over `items`, evaluated in parallel and reduced in input order
/// so the result does not depend on scheduling.
pub fn ordered_sum<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    let vals: Vec<Result<f64>> = items.par_iter().map(f).collect();
    let mut s = 0.0;
    for v in vals {
        s += v?;
    }
    Ok(s)
}

/// Vector-valued counterpart of [`ordered_sum`].
pub fn ordered_vector_sum<T: Sync>(
    items: &[T],
    dim: usize,
    f: impl Fn(&T) -> Result<Vector> + Sync + Send,
) -> Result<Vector> {
    let vals: Vec<Result<Vector>> = items.par_iter().map(f).collect();
    let mut s = Vector::zeros(dim);
    for v in vals {
        s += v?;
    }
    Ok(s)
}

const GL_ORDER: usize = 8;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 1 { x } else { p1 };
            let pm = if order == 1 { 1.0 } else { p0 };
            dp = n * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule on the circle with panel edges at the given
/// angles (in addition to a uniform panel grid).
pub fn circle_rule(res: &Resolution, breakpoints: &[f64]) -> Vec<SphereNode> {
    let panels = (res.circle_nodes / GL_ORDER).max(4);
    let tau = 2.0 * PI;
    let mut edges: Vec<f64> = (0..panels).map(|k| tau * k as f64 / panels as f64).collect();
    edges.extend(breakpoints.iter().map(|b| b.rem_euclid(tau)));
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    let (gx, gw) = gauss_legendre(GL_ORDER);
    let mut nodes = Vec::with_capacity(edges.len() * GL_ORDER);
    for (k, &a) in edges.iter().enumerate() {
        let b = if k + 1 < edges.len() { edges[k + 1] } else { edges[0] + tau };
        let half = 0.5 * (b - a);
        if half <= 0.0 {
            continue;
        }
        let mid = 0.5 * (a + b);
        for (x, w) in gx.iter().zip(&gw) {
            let t = mid + half * x;
            nodes.push(SphereNode {
                u: Vector::from_vec(vec![t.cos(), t.sin()]),
                weight: w * half,
            });
        }
    }
    nodes
}

/// Quadrature on the unit sphere of dimension `dim - 1` whose cells never
/// straddle a great circle `{<a, u> = 0}` for `a` in `cuts`.
pub fn sphere_rule(dim: usize, res: &Resolution, cuts: &[Vector]) -> Vec<SphereNode> {
    match dim {
        2 => {
            let mut breaks = Vec::with_capacity(2 * cuts.len());
            for a in cuts {
                if a.norm() == 0.0 {
                    continue;
                }
                let t = a[1].atan2(a[0]);
                breaks.push(t + 0.5 * PI);
                breaks.push(t - 0.5 * PI);
            }
            circle_rule(res, &breaks)
        }
        3 => {
            let cuts3: Vec<Vector3<f64>> = cuts
                .iter()
                .filter(|a| a.norm() > 0.0)
                .map(|a| Vector3::new(a[0], a[1], a[2]).normalize())
                .collect();
            sphere_rule_3d(res.sphere_level, &cuts3)
                .into_iter()
                .map(|(u, w)| SphereNode {
                    u: Vector::from_vec(vec![u.x, u.y, u.z]),
                    weight: w,
                })
                .collect()
        }
        _ => panic!("sphere quadrature is only provided for dimensions 2 and 3"),
    }
}

/// Vertices and triangles of the icosahedron subdivided `level` times.
pub fn icosphere(level: u32) -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
    .collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache = std::collections::HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<Vector3<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            *cache.entry(key).or_insert_with(|| {
                verts.push((verts[a] + verts[b]).normalize());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(tris.len() * 4);
        for &[a, b, c] in &tris {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        tris = next;
    }
    (verts, tris)
}

// Degree-5 seven-point rule on the reference triangle (barycentric, weights sum to 1).
fn triangle_rule() -> [([f64; 3], f64); 7] {
    let s = 15f64.sqrt();
    let a = (6.0 - s) / 21.0;
    let b = (9.0 + 2.0 * s) / 21.0;
    let c = (6.0 + s) / 21.0;
    let d = (9.0 - 2.0 * s) / 21.0;
    let wa = (155.0 - s) / 1200.0;
    let wc = (155.0 + s) / 1200.0;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 9.0 / 40.0),
        ([a, a, b], wa),
        ([a, b, a], wa),
        ([b, a, a], wa),
        ([c, c, d], wc),
        ([c, d, c], wc),
        ([d, c, c], wc),
    ]
}

/// Split a convex spherical polygon by the great circle orthogonal to `a`.
fn split_polygon(
    poly: &[Vector3<f64>],
    a: &Vector3<f64>,
) -> Option<(Vec<Vector3<f64>>, Vec<Vector3<f64>>)> {
    const EPS: f64 = 1e-14;
    let s: Vec<f64> = poly.iter().map(|v| a.dot(v)).collect();
    if s.iter().all(|&x| x >= -EPS) || s.iter().all(|&x| x <= EPS) {
        return None;
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let m = poly.len();
    for i in 0..m {
        let j = (i + 1) % m;
        let (si, sj) = (s[i], s[j]);
        if si >= -EPS {
            pos.push(poly[i]);
        }
        if si <= EPS {
            neg.push(poly[i]);
        }
        if (si > EPS && sj < -EPS) || (si < -EPS && sj > EPS) {
            let p = (poly[j] * si.abs() + poly[i] * sj.abs()).normalize();
            pos.push(p);
            neg.push(p);
        }
    }
    if pos.len() < 3 || neg.len() < 3 {
        return None;
    }
    Some((pos, neg))
}

fn sphere_rule_3d(level: u32, cuts: &[Vector3<f64>]) -> Vec<(Vector3<f64>, f64)> {
    let (verts, tris) = icosphere(level);
    let rule = triangle_rule();
    let mut out = Vec::with_capacity(tris.len() * 7);
    let mut stack: Vec<Vec<Vector3<f64>>> = Vec::new();
    let mut cells: Vec<Vec<Vector3<f64>>> = Vec::new();
    for tri in &tris {
        stack.clear();
        stack.push(tri.iter().map(|&i| verts[i]).collect());
        for a in cuts {
            let mut next = Vec::with_capacity(stack.len() + 1);
            for poly in stack.drain(..) {
                match split_polygon(&poly, a) {
                    Some((p, q)) => {
                        next.push(p);
                        next.push(q);
                    }
                    None => next.push(poly),
                }
            }
            stack = next;
        }
        cells.append(&mut stack);
    }
    for cell in &cells {
        for k in 1..cell.len() - 1 {
            let (a, b, c) = (cell[0], cell[k], cell[k + 1]);
            let normal = (b - a).cross(&(c - a));
            let an = a.dot(&normal).abs();
            if an <= 0.0 {
                continue;
            }
            for (bary, w) in &rule {
                let q = a * bary[0] + b * bary[1] + c * bary[2];
                let r = q.norm();
                out.push((q / r, 0.5 * w * an / (r * r * r)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(nodes: &[SphereNode], f: impl Fn(&Vector) -> f64) -> f64 {
        nodes.iter().map(|n| n.weight * f(&n.u)).sum()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn circle_total_length_and_moments() {
        let res = Resolution::default();
        let nodes = circle_rule(&res, &[0.3, 1.7, 1.7000000001]);
        assert!((integrate(&nodes, |_| 1.0) - 2.0 * PI).abs() < 1e-13);
        assert!((integrate(&nodes, |u| u[0] * u[0]) - PI).abs() < 1e-13);
    }

    #[test]
    fn circle_rule_is_exact_for_kinked_integrand_with_breakpoints() {
        // |cos(t - 0.4)| integrates to 4 over the circle.
        let a = Vector::from_vec(vec![0.4f64.cos(), 0.4f64.sin()]);
        let nodes = sphere_rule(2, &Resolution::new(64, 0), &[a.clone()]);
        let val = integrate(&nodes, |u| u.dot(&a).abs());
        assert!((val - 4.0).abs() < 1e-13, "{val}");
    }

    #[test]
    fn sphere_area_and_second_moments() {
        // error decays like h^6
        let mut prev = f64::INFINITY;
        for level in 0..4 {
            let nodes = sphere_rule(3, &Resolution::new(64, level), &[]);
            let err = (integrate(&nodes, |_| 1.0) - 4.0 * PI).abs();
            assert!(err < prev / 40.0, "level {level}: {err}");
            prev = err;
        }
        assert!(prev < 1e-7);
        let nodes = sphere_rule(3, &Resolution::new(64, 3), &[]);
        let m = integrate(&nodes, |u| u[2] * u[2]);
        assert!((m - 4.0 * PI / 3.0).abs() < 1e-7);
    }

    #[test]
    fn sphere_cuts_make_abs_integrand_accurate() {
        // integral of |<a,u>| over S^2 is 2 pi
        let cuts = vec![
            Vector::from_vec(vec![0.3, -0.2, 0.9]),
            Vector::from_vec(vec![1.0, 1.0, 0.0]),
        ];
        let nodes = sphere_rule(3, &Resolution::new(64, 3), &cuts);
        for a in &cuts {
            let an = a.normalize();
            let val = integrate(&nodes, |u| u.dot(&an).abs());
            assert!((val - 2.0 * PI).abs() < 1e-7, "{val}");
        }
        let total = integrate(&nodes, |_| 1.0);
        assert!((total - 4.0 * PI).abs() < 1e-7);
    }
}
