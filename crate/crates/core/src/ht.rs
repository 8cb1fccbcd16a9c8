//! Holmes-Thompson volume and boundary area in a normed space with unit ball `B`.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::convex::{ConvexBody, Polytope, SmoothBody};
use crate::error::{GeomError, Result};
use crate::quadrature::{circle_rule, ordered_sum, sphere_rule, Resolution, SphereNode};
use crate::linalg::orthonormal_complement;
use crate::{Matrix, Vector};

/// Volume of the Euclidean unit ball in dimension `k`.
pub fn eps(k: usize) -> f64 {
    let h = 0.5 * k as f64;
    (h * PI.ln() - ln_gamma(h + 1.0)).exp()
}

pub(crate) fn same_dim(a: &ConvexBody, b: &ConvexBody) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.dim())
}

pub(crate) fn require_origin_interior(b: &ConvexBody) -> Result<()> {
    let inside = match b {
        ConvexBody::Polytope(p) => p.margin(&Vector::zeros(p.dim())) > p.tol(),
        ConvexBody::Smooth(s) => s.min_support() > 0.0,
    };
    if inside {
        Ok(())
    } else {
        Err(GeomError::OriginNotInterior)
    }
}

/// The function `u -> |π_{u⊥}((C - x)°)| = |(u⊥ ∩ (C - x))°|` on unit vectors.
pub(crate) enum SlicePolar<'a> {
    /// `(C - x)°` of a polytope; the projection volume is Cauchy's formula.
    Polar(Polytope),
    Smooth(&'a SmoothBody, Vector),
}

impl<'a> SlicePolar<'a> {
    pub(crate) fn new(body: &'a ConvexBody, x: &Vector) -> Result<SlicePolar<'a>> {
        if body.margin(x) <= 0.0 {
            return Err(GeomError::PointNotInterior);
        }
        Ok(match body {
            ConvexBody::Polytope(p) => {
                SlicePolar::Polar(p.translate(&-x).polar().map_err(|_| GeomError::PointNotInterior)?)
            }
            ConvexBody::Smooth(s) => SlicePolar::Smooth(s, x.clone()),
        })
    }

    pub(crate) fn eval(&self, u: &Vector, res: &Resolution) -> Result<f64> {
        match self {
            SlicePolar::Polar(p) => Ok(p.projection_volume(u)),
            SlicePolar::Smooth(s, x) => s.slice_polar_volume(u, x, res),
        }
    }

    /// Normals of the great spheres across which `eval` is not smooth.
    pub(crate) fn cuts(&self) -> Vec<Vector> {
        match self {
            SlicePolar::Polar(p) => p.facets().iter().map(|f| f.normal.clone()).collect(),
            SlicePolar::Smooth(..) => Vec::new(),
        }
    }
}

/// `∫_{∂M} F(normal) dH^{n-1}` for `F` given by `integrand`.
pub(crate) fn integrate_over_boundary(surface: &ConvexBody, integrand: &SlicePolar, res: &Resolution) -> Result<f64> {
    match surface {
        ConvexBody::Polytope(p) => ordered_sum(p.facets(), |f| Ok(f.area * integrand.eval(&f.normal, res)?)),
        ConvexBody::Smooth(s) => {
            let nodes = sphere_rule(s.dim(), res, &integrand.cuts());
            ordered_sum(&nodes, |q| Ok(q.weight * s.gauss_jacobian(&q.u) * integrand.eval(&q.u, res)?))
        }
    }
}

/// Holmes-Thompson volume `|A| |B°| / ε_n` of `A` in the norm with unit ball `B`.
pub fn ht_volume(a: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let n = same_dim(a, b)?;
    require_origin_interior(b)?;
    Ok(a.volume(res)? * b.polar_volume(res)? / eps(n))
}

/// Holmes-Thompson area `A_B(∂M)` of the boundary of `m` in the norm with unit
/// ball `b`: `(1/ε_{n-1}) ∫_{∂M} |(T_x ∂M ∩ B)°| dx`.
pub fn ht_area(m: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let n = same_dim(m, b)?;
    require_origin_interior(b)?;
    let integrand = SlicePolar::new(b, &Vector::zeros(n)).map_err(|_| GeomError::OriginNotInterior)?;
    Ok(integrate_over_boundary(m, &integrand, res)? / eps(n - 1))
}

/// `A_{B°}(∂K°)`, evaluated as `A_K(∂B)` (slices of `K` by tangent hyperplanes of `∂B`).
pub fn ht_area_dual(k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    require_origin_interior(k)?;
    require_origin_interior(b)?;
    ht_area(b, k, res)
}

/// `A_{B°}(∂K°)` evaluated directly on `∂K°`: `(1/ε_{n-1}) ∫_{∂K°} |π_T(B)|`.
///
/// Smooth `K` is parametrized by the outer normal `ν` of `∂K°`. The point of
/// `∂K°` with normal `ν` is `u / h_K(u)`, where `u` is the normal of `K` at its
/// boundary point in direction `ν`. The area element is the radial one,
/// `h_K^{-n} |∇h_K| du`, divided by the Jacobian of `u -> ν`. Kinks of the
/// integrand then lie on the great spheres `ν ⊥ a`, `a` a facet normal of `B`.
pub fn ht_area_dual_polar_route(k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let n = same_dim(k, b)?;
    require_origin_interior(k)?;
    require_origin_interior(b)?;
    let total = match k {
        ConvexBody::Polytope(p) => {
            let kp = p.polar()?;
            ordered_sum(kp.facets(), |f| Ok(f.area * b.projection_volume(&f.normal, res)))?
        }
        ConvexBody::Smooth(s) => {
            let cuts: Vec<Vector> = match b {
                ConvexBody::Polytope(bp) => bp.facets().iter().map(|f| f.normal.clone()).collect(),
                ConvexBody::Smooth(_) => Vec::new(),
            };
            let nodes = sphere_rule(n, res, &cuts);
            ordered_sum(&nodes, |q| {
                let nu = &q.u;
                let u = s.radial_normal(nu)?;
                let (h, g, hess) = s.support_all(&u);
                let r = g.norm();
                let (e_nu, e_u) = (orthonormal_complement(nu), orthonormal_complement(&u));
                let jac = Matrix::from_fn(n - 1, n - 1, |i, j| e_nu[i].dot(&(&hess * &e_u[j])) / r);
                let density = h.powi(-(n as i32)) * r / jac.determinant().abs();
                Ok(q.weight * density * b.projection_volume(nu, res))
            })?
        }
    };
    Ok(total / eps(n - 1))
}

fn rotate(v: &Vector) -> Vector {
    Vector::from_vec(vec![-v[1], v[0]])
}

fn polygon_edges(p: &Polytope) -> Vec<Vector> {
    p.facets()
        .iter()
        .map(|f| &p.vertices()[f.vertices[1]] - &p.vertices()[f.vertices[0]])
        .collect()
}

/// Tangent vector of `∂B°` in the radial parametrization `φ -> v(φ) / h_B(v(φ))`.
fn polar_tangent(b: &SmoothBody, phi: f64) -> Vector {
    let v = Vector::from_vec(vec![phi.cos(), phi.sin()]);
    let dv = rotate(&v);
    let (h, g, _) = b.support_all(&v);
    &dv / h - &v * (g.dot(&dv) / (h * h))
}

/// Zeros of a function on the circle, located by sign changes on a grid and bisection.
fn circle_roots(f: impl Fn(f64) -> f64, samples: usize) -> Vec<f64> {
    let tau = 2.0 * PI;
    let mut roots = Vec::new();
    let mut prev = f(0.0);
    for k in 1..=samples {
        let t = tau * k as f64 / samples as f64;
        let cur = f(t);
        if prev == 0.0 {
            roots.push(tau * (k - 1) as f64 / samples as f64);
        } else if prev * cur < 0.0 {
            let (mut lo, mut hi) = (tau * (k - 1) as f64 / samples as f64, t);
            let mut flo = prev;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm * flo <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    roots
}

/// The planar formula `(1/(2 ε_1)) ∬_{∂K × ∂B°} |p'(t) · x'(s)| ds dt`.
///
/// Polygon pairs are summed exactly over edge pairs; smooth boundaries use the
/// Gauss map of `K` and the radial parametrization of `∂B°`, with quadrature
/// panels split where the integrand has kinks.
pub fn symplectic_area_2d(k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let n = same_dim(k, b)?;
    if n != 2 {
        return Err(GeomError::WrongDimension { expected: 2, found: n });
    }
    require_origin_interior(b)?;
    let scale = 1.0 / (2.0 * eps(1));
    let total = match (k, b) {
        (ConvexBody::Polytope(kp), ConvexBody::Polytope(bp)) => {
            let e = polygon_edges(kp);
            let f = polygon_edges(&bp.polar()?);
            let mut s = 0.0;
            for a in &e {
                for c in &f {
                    s += a.dot(c).abs();
                }
            }
            s
        }
        (ConvexBody::Smooth(ks), ConvexBody::Polytope(bp)) => {
            // x'(θ) = ρ(θ) t(θ) with ρ the radius of curvature; kinks where t ⊥ f.
            let f = polygon_edges(&bp.polar()?);
            let cuts: Vec<Vector> = f.iter().map(rotate).collect();
            let nodes = sphere_rule(2, res, &cuts);
            ordered_sum(&nodes, |q| {
                let t = rotate(&q.u);
                let rho = ks.gauss_jacobian(&q.u);
                Ok(q.weight * rho * f.iter().map(|c| c.dot(&t).abs()).sum::<f64>())
            })?
        }
        (ConvexBody::Polytope(kp), ConvexBody::Smooth(bs)) => {
            // Kinks where the normal of ∂B° (along ∇h_B) is parallel to an edge of K.
            let e = polygon_edges(kp);
            let mut breaks = Vec::new();
            for a in &e {
                let ja = rotate(a);
                breaks.extend(circle_roots(
                    |phi| bs.support_grad(&Vector::from_vec(vec![phi.cos(), phi.sin()])).dot(&ja),
                    4 * res.circle_nodes,
                ));
            }
            let nodes: Vec<SphereNode> = circle_rule(res, &breaks);
            ordered_sum(&nodes, |q| {
                let phi = q.u[1].atan2(q.u[0]);
                let dp = polar_tangent(bs, phi);
                Ok(q.weight * e.iter().map(|a| a.dot(&dp).abs()).sum::<f64>())
            })?
        }
        (ConvexBody::Smooth(ks), ConvexBody::Smooth(bs)) => {
            let outer = circle_rule(res, &[]);
            ordered_sum(&outer, |q| {
                let phi = q.u[1].atan2(q.u[0]);
                let dp = polar_tangent(bs, phi);
                let inner = sphere_rule(2, res, &[rotate(&dp)]);
                let s: f64 = inner
                    .iter()
                    .map(|r| r.weight * ks.gauss_jacobian(&r.u) * dp.dot(&rotate(&r.u)).abs())
                    .sum();
                Ok(q.weight * s)
            })?
        }
    };
    Ok(scale * total)
}

/// Support function of the isoperimetrix: `|π_{u⊥}(K°)| / ε_{n-1}`.
pub fn isoperimetrix_support(k: &ConvexBody, u: &Vector, res: &Resolution) -> Result<f64> {
    if u.len() != k.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: k.dim(),
            found: u.len(),
        });
    }
    let r = u.norm();
    if !(r > 0.0) {
        return Err(GeomError::ZeroDirection);
    }
    require_origin_interior(k)?;
    let integrand = SlicePolar::new(k, &Vector::zeros(k.dim())).map_err(|_| GeomError::OriginNotInterior)?;
    Ok(integrand.eval(&(u / r), res)? / eps(k.dim() - 1))
}

/// `(4n)^n / (n! ε_n)`.
pub fn isoperimetric_bound(n: usize) -> f64 {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    (4.0 * n as f64).powi(n as i32) / (fact * eps(n))
}

/// `(A_K(∂B)^n / vol_K(B)^{n-1}, bound)`, where `vol_K(B) = |B| |K°| / ε_n`.
pub fn isoperimetric_ratio(k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<(f64, f64)> {
    let n = same_dim(k, b)?;
    let area = ht_area(b, k, res)?;
    let vol = ht_volume(b, k, res)?;
    Ok((area.powi(n as i32) / vol.powi(n as i32 - 1), isoperimetric_bound(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;
    use crate::{Matrix, Polytope};

    fn disc() -> ConvexBody {
        SmoothBody::ball(2, 1.0).unwrap().into()
    }

    fn square() -> ConvexBody {
        Polytope::cube(2, 1.0).into()
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((eps(1) - 2.0).abs() < 1e-14);
        assert!((eps(2) - PI).abs() < 1e-14);
        assert!((eps(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((eps(4) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn anchors() {
        let res = Resolution::default();
        assert!((ht_area(&disc(), &disc(), &res).unwrap() - 2.0 * PI).abs() < 1e-9);
        assert!((ht_area(&square(), &square(), &res).unwrap() - 8.0).abs() < 1e-12);
        assert!((ht_volume(&disc(), &disc(), &res).unwrap() - PI).abs() < 1e-12);
        assert!((ht_volume(&square(), &square(), &res).unwrap() - 8.0 / PI).abs() < 1e-12);
        let cube: ConvexBody = Polytope::cube(3, 1.0).into();
        let ball: ConvexBody = SmoothBody::ball(3, 1.0).unwrap().into();
        assert!((ht_area(&cube, &ball, &res).unwrap() - 24.0).abs() < 1e-10);
    }

    #[test]
    fn duality_routes_agree() {
        let res = Resolution::default();
        for (k, b) in [(square(), square()), (disc(), disc()), (square(), disc())] {
            let a = ht_area_dual(&k, &b, &res).unwrap();
            let p = ht_area_dual_polar_route(&k, &b, &res).unwrap();
            assert!((a - p).abs() < 1e-8 * a, "{a} {p}");
        }
        let e: ConvexBody = SmoothBody::ellipsoid(&Matrix::from_diagonal(&vector(&[1.0, 2.0]))).unwrap().into();
        let tri: ConvexBody = Polytope::from_points(&[vector(&[1.0, 0.2]), vector(&[-0.5, 0.9]), vector(&[-0.4, -1.0])])
            .unwrap()
            .into();
        for (k, b) in [(e.clone(), tri.clone()), (tri.clone(), e.clone())] {
            let a = ht_area_dual(&k, &b, &res).unwrap();
            let p = ht_area_dual_polar_route(&k, &b, &res).unwrap();
            assert!((a - p).abs() < 1e-9 * a, "{a} {p}");
        }
    }

    #[test]
    fn symplectic_formula() {
        let res = Resolution::default();
        assert!((symplectic_area_2d(&square(), &square(), &res).unwrap() - 8.0).abs() < 1e-13);
        assert!((symplectic_area_2d(&disc(), &disc(), &res).unwrap() - 2.0 * PI).abs() < 1e-9);
        let e: ConvexBody = SmoothBody::ellipsoid(&Matrix::from_diagonal(&vector(&[1.0, 2.0]))).unwrap().into();
        for (k, b) in [(e.clone(), square()), (square(), e.clone())] {
            let s = symplectic_area_2d(&k, &b, &res).unwrap();
            let h = ht_area(&k, &b, &res).unwrap();
            assert!((s - h).abs() < 1e-8 * h, "{s} {h}");
        }
        let cube: ConvexBody = Polytope::cube(3, 1.0).into();
        assert!(matches!(symplectic_area_2d(&cube, &cube, &res), Err(GeomError::WrongDimension { .. })));
    }

    #[test]
    fn isoperimetrix() {
        let res = Resolution::default();
        let u = vector(&[1.0, 0.0]);
        assert!((isoperimetrix_support(&disc(), &u, &res).unwrap() - 1.0).abs() < 1e-12);
        assert!((isoperimetrix_support(&square(), &u, &res).unwrap() - 1.0).abs() < 1e-12);
        assert!((isoperimetric_bound(2) - 32.0 / PI).abs() < 1e-12);
        let (r, bound) = isoperimetric_ratio(&disc(), &disc(), &res).unwrap();
        assert!((r - 4.0 * PI).abs() < 1e-8 && r >= bound);
    }
}
