//! The Holmes-Thompson Santalo functional `x -> A_{K-x}(∂B)`, its classical
//! counterpart `x -> |(K-x)°|`, their gradients and minimizers.

use serde::Serialize;

use crate::convex::{ConvexBody, LinearHyperplane, Polytope};
use crate::equiaffine::dual_centroid;
use crate::error::{GeomError, Result};
use crate::ht::{eps, integrate_over_boundary, same_dim, SlicePolar};
use crate::linalg::vector;
use crate::optimize::{gradient_descent, nelder_mead, DescentOptions, NelderMeadOptions};
use crate::quadrature::{ordered_sum, ordered_vector_sum, sphere_rule, Resolution};
use crate::Vector;

/// Which functional of the point `x` to minimize.
#[derive(Debug, Clone, Copy)]
pub enum Functional<'a> {
    /// `x -> A_{K-x}(∂B)` for the given unit ball `B`.
    HolmesThompson(&'a ConvexBody),
    /// `x -> |(K-x)°|`.
    Classical,
}

impl Functional<'_> {
    pub fn value(&self, x: &Vector, k: &ConvexBody, res: &Resolution) -> Result<f64> {
        match self {
            Functional::HolmesThompson(b) => objective(x, k, b, res),
            Functional::Classical => classical_objective(x, k, res),
        }
    }

    pub fn gradient(&self, x: &Vector, k: &ConvexBody, res: &Resolution) -> Result<Vector> {
        match self {
            Functional::HolmesThompson(b) => gradient(x, k, b, res),
            Functional::Classical => classical_gradient(x, k, res),
        }
    }
}

/// `A_{K-x}(∂B) = A_{B°}(∂(K-x)°)`.
pub fn objective(x: &Vector, k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let n = same_dim(k, b)?;
    let integrand = SlicePolar::new(k, x)?;
    Ok(integrate_over_boundary(b, &integrand, res)? / eps(n - 1))
}

/// `|(K-x)°|`.
pub fn classical_objective(x: &Vector, k: &ConvexBody, res: &Resolution) -> Result<f64> {
    if k.margin(x) <= 0.0 {
        return Err(GeomError::PointNotInterior);
    }
    match k {
        ConvexBody::Polytope(p) => p.translate(&-x).polar().map_err(|_| GeomError::PointNotInterior)?.volume(),
        ConvexBody::Smooth(s) => {
            let n = s.dim();
            let nodes = sphere_rule(n, res, &[]);
            let v = ordered_sum(&nodes, |q| {
                let h = s.support(&q.u) - q.u.dot(x);
                if h <= 0.0 {
                    return Err(GeomError::PointNotInterior);
                }
                Ok(q.weight * h.powi(-(n as i32)))
            })?;
            Ok(v / n as f64)
        }
    }
}

/// Gradient of `x -> |(K-x)°|`: `(n+1) ∫_{(K-x)°} y dy`.
pub fn classical_gradient(x: &Vector, k: &ConvexBody, res: &Resolution) -> Result<Vector> {
    if k.margin(x) <= 0.0 {
        return Err(GeomError::PointNotInterior);
    }
    let n = k.dim();
    match k {
        ConvexBody::Polytope(p) => {
            let polar = p.translate(&-x).polar().map_err(|_| GeomError::PointNotInterior)?;
            Ok(polar.centroid_integral()? * (n as f64 + 1.0))
        }
        ConvexBody::Smooth(s) => {
            let nodes = sphere_rule(n, res, &[]);
            ordered_vector_sum(&nodes, n, |q| {
                let h = s.support(&q.u) - q.u.dot(x);
                if h <= 0.0 {
                    return Err(GeomError::PointNotInterior);
                }
                Ok(&q.u * (q.weight * h.powi(-(n as i32) - 1)))
            })
        }
    }
}

/// Distance from the canonical interior point to the boundary; sets the
/// finite-difference scale.
pub fn inradius_proxy(k: &ConvexBody) -> f64 {
    k.margin(&k.interior_point())
}

/// Central finite-difference gradient.
pub fn fd_gradient(f: &dyn Fn(&Vector) -> Result<f64>, x: &Vector, h: f64) -> Result<Vector> {
    let n = x.len();
    let mut g = Vector::zeros(n);
    for i in 0..n {
        let mut e = Vector::zeros(n);
        e[i] = h;
        g[i] = (f(&(x + &e))? - f(&(x - &e))?) / (2.0 * h);
    }
    Ok(g)
}

/// Gradient of the Holmes-Thompson functional.
///
/// * polytope `K`, smooth `B`: `((n+1)/ε_{n-1}) C_B((K-x)*)`;
/// * smooth `K`: the slice terms differentiated under the integral (each
///   section support value has gradient minus its minimizer);
/// * polytope `K`, polytope `B`: central differences with step `1e-5` times
///   the inradius proxy of `K`.
pub fn gradient(x: &Vector, k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<Vector> {
    let n = same_dim(k, b)?;
    if k.margin(x) <= 0.0 {
        return Err(GeomError::PointNotInterior);
    }
    match (k, b) {
        (ConvexBody::Polytope(p), ConvexBody::Smooth(bs)) => {
            let shifted: ConvexBody = p.translate(&-x).into();
            Ok(dual_centroid(&shifted, bs, res)? * ((n as f64 + 1.0) / eps(n - 1)))
        }
        (ConvexBody::Smooth(ks), _) => {
            let g = match b {
                ConvexBody::Polytope(bp) => ordered_vector_sum(bp.facets(), n, |f| {
                    Ok(ks.slice_polar_volume_gradient(&f.normal, x, res)?.1 * f.area)
                })?,
                ConvexBody::Smooth(bs) => {
                    let nodes = sphere_rule(n, res, &[]);
                    ordered_vector_sum(&nodes, n, |q| {
                        let jac = bs.gauss_jacobian(&q.u);
                        Ok(ks.slice_polar_volume_gradient(&q.u, x, res)?.1 * (q.weight * jac))
                    })?
                }
            };
            Ok(g / eps(n - 1))
        }
        _ => {
            let h = 1e-5 * inradius_proxy(k);
            fd_gradient(&|y| objective(y, k, b, res), x, h)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveStatus {
    Converged,
    MaxIter,
    FlatRegion,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Gradient-norm tolerance (smooth paths) or simplex diameter relative to
    /// `diam K` (derivative-free path).
    pub tol: f64,
    pub max_iter: usize,
    pub resolution: Resolution,
    /// Largest value variation still counted as flat, relative to `max(1, |f|)`.
    pub flat_threshold: f64,
    /// Probe length for flatness, relative to `diam K`.
    pub flat_length: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            max_iter: 2000,
            resolution: Resolution::default(),
            flat_threshold: 1e-12,
            flat_length: 1e-3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub point: Vector,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub status: SolveStatus,
    /// Iterates (best point and value per iteration); for a flat region the
    /// last two entries are the segment endpoints.
    pub trace: Vec<(Vector, f64)>,
    pub segment: Option<(Vector, Vector)>,
}

fn probe_directions(n: usize) -> Vec<Vector> {
    let mut dirs = Vec::new();
    for i in 0..n {
        let mut e = Vector::zeros(n);
        e[i] = 1.0;
        dirs.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [1.0, -1.0] {
                let mut e = Vector::zeros(n);
                e[i] = 1.0;
                e[j] = s;
                dirs.push(e.normalize());
            }
        }
    }
    dirs
}

/// Largest `t` (up to `limit`) with `|f(x + t d) - f0| <= thr`, by doubling then bisection.
fn flat_extent(f: &dyn Fn(&Vector) -> Option<f64>, x: &Vector, d: &Vector, f0: f64, thr: f64, start: f64, limit: f64) -> f64 {
    let flat = |t: f64| f(&(x + d * t)).is_some_and(|v| (v - f0).abs() <= thr);
    let mut lo = start;
    let mut hi = start;
    while flat(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > limit {
            return lo;
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if flat(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Minimize `functional` over the interior of `k`, starting at the vertex
/// barycenter (or center).
pub fn santalo_point(k: &ConvexBody, functional: Functional, opts: &SolveOptions) -> Result<SolveResult> {
    if let Functional::HolmesThompson(b) = functional {
        same_dim(k, b)?;
    }
    let res = &opts.resolution;
    let n = k.dim();
    let diam = k.diameter();
    let x0 = k.interior_point();
    let f = |x: &Vector| -> Option<f64> {
        if k.margin(x) <= 0.0 {
            return None;
        }
        functional.value(x, k, res).ok()
    };
    let smooth_path = match functional {
        Functional::Classical => true,
        Functional::HolmesThompson(b) => matches!(b, ConvexBody::Smooth(_)),
    };
    let outcome = if smooth_path {
        let g = |x: &Vector| -> Option<Vector> { functional.gradient(x, k, res).ok() };
        gradient_descent(
            &f,
            &g,
            &x0,
            &DescentOptions {
                max_iter: opts.max_iter,
                gtol: opts.tol,
                initial_step: 0.1 * inradius_proxy(k),
            },
        )
    } else {
        nelder_mead(
            &f,
            &x0,
            &NelderMeadOptions {
                max_iter: opts.max_iter,
                xtol: opts.tol * diam,
                initial_step: 0.25 * inradius_proxy(k),
                restarts: 8,
            },
        )
    };
    let mut point = outcome.x.clone();
    let mut value = outcome.fx;
    let mut trace = outcome.trace;
    let mut status = if outcome.converged {
        SolveStatus::Converged
    } else {
        SolveStatus::MaxIter
    };
    let mut segment = None;

    let thr = opts.flat_threshold * value.abs().max(1.0);
    let probe = opts.flat_length * diam;
    for d in probe_directions(n) {
        let fp = f(&(&point + &d * probe));
        let fm = f(&(&point - &d * probe));
        let is_flat = matches!((fp, fm), (Some(a), Some(b)) if (a - value).abs() <= thr && (b - value).abs() <= thr);
        if !is_flat {
            continue;
        }
        let tp = flat_extent(&f, &point, &d, value, thr, probe, 2.0 * diam);
        let tm = flat_extent(&f, &point, &-&d, value, thr, probe, 2.0 * diam);
        let a = &point + &d * tp;
        let b = &point - &d * tm;
        point = (&a + &b) * 0.5;
        value = f(&point).ok_or(GeomError::PointNotInterior)?;
        trace.push((a.clone(), f(&a).unwrap_or(f64::NAN)));
        trace.push((b.clone(), f(&b).unwrap_or(f64::NAN)));
        segment = Some((a, b));
        status = SolveStatus::FlatRegion;
        break;
    }
    let h = 1e-5 * inradius_proxy(k);
    let gradient_norm = match functional.gradient(&point, k, res) {
        Ok(g) if smooth_path => g.norm(),
        _ => fd_gradient(&|y| functional.value(y, k, res), &point, h).map(|g| g.norm()).unwrap_or(f64::NAN),
    };
    Ok(SolveResult {
        point,
        value,
        gradient_norm,
        iterations: outcome.iterations,
        status,
        trace,
        segment,
    })
}

/// `f_K(H, x1) + f_K(H, x2) - 2 f_K(H, (x1 + x2)/2)`: nonnegative, and zero
/// exactly when the slices of `K` by `H` are translates along `[x1, x2]`.
pub fn strcvx_defect(h: &LinearHyperplane, x1: &Vector, x2: &Vector, k: &ConvexBody, res: &Resolution) -> Result<f64> {
    let mid = (x1 + x2) * 0.5;
    Ok(k.slice_polar_volume(h, x1, res)? + k.slice_polar_volume(h, x2, res)? - 2.0 * k.slice_polar_volume(h, &mid, res)?)
}

/// Midpoint convexity defect of the Holmes-Thompson functional.
pub fn midpoint_defect(x1: &Vector, x2: &Vector, k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> Result<f64> {
    let mid = (x1 + x2) * 0.5;
    Ok(objective(x1, k, b, res)? + objective(x2, k, b, res)? - 2.0 * objective(&mid, k, b, res)?)
}

/// A pair `(K, B)` whose functional is constant on a segment.
#[derive(Debug, Clone)]
pub struct NonuniqueExample {
    pub k: Polytope,
    pub b: Polytope,
    pub x1: Vector,
    pub x2: Vector,
}

impl NonuniqueExample {
    /// Facet directions of `B`.
    pub fn b_directions(&self) -> Vec<LinearHyperplane> {
        let mut out: Vec<LinearHyperplane> = Vec::new();
        for f in self.b.facets() {
            let h = LinearHyperplane::new(&f.normal).expect("unit normal");
            if !out.iter().any(|g| g.approx_eq(&h, 1e-12)) {
                out.push(h);
            }
        }
        out
    }
}

/// `K = [-1, 1]^2` with the cylindrical pair `x1 = (0, -eps0)`, `x2 = (0, eps0)`
/// and the rhombus `B = conv{(±2, 0), (0, ±1)}`. Lines of slope `±1/2` through
/// points of `[x1, x2]` cut `K` in chords between its vertical sides, so the
/// slices in both facet directions of `B` are translates of each other and the
/// functional is constant along the segment. Requires `eps0 <= 1/2`.
pub fn nonunique_example(eps0: f64) -> NonuniqueExample {
    let k = Polytope::cube(2, 1.0);
    let b = Polytope::cross_polytope(2, 1.0)
        .linear_image(&nalgebra::DMatrix::from_diagonal(&vector(&[2.0, 1.0])))
        .expect("invertible");
    NonuniqueExample {
        k,
        b,
        x1: vector(&[0.0, -eps0]),
        x2: vector(&[0.0, eps0]),
    }
}

/// Distance from `x` to `∂K` along the ray `x + t d`, `|d| = 1`.
pub fn boundary_distance(k: &ConvexBody, x: &Vector, d: &Vector) -> Result<f64> {
    if k.margin(x) <= 0.0 {
        return Err(GeomError::PointNotInterior);
    }
    let r = d.norm();
    if !(r > 0.0) {
        return Err(GeomError::ZeroDirection);
    }
    let d = d / r;
    match k {
        ConvexBody::Polytope(p) => Ok(p
            .facets()
            .iter()
            .filter(|f| f.normal.dot(&d) > 0.0)
            .map(|f| (f.offset - f.normal.dot(x)) / f.normal.dot(&d))
            .fold(f64::INFINITY, f64::min)),
        ConvexBody::Smooth(_) => {
            let (mut lo, mut hi) = (0.0, k.diameter());
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if k.margin(&(x + &d * mid)) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(lo)
        }
    }
}

/// Values of `functional` along the ray from `from` in direction `d`, at the
/// given distances to `∂K`: `[(distance, value)]`.
pub fn properness_probe(
    k: &ConvexBody,
    functional: Functional,
    from: &Vector,
    d: &Vector,
    distances: &[f64],
    res: &Resolution,
) -> Result<Vec<(f64, f64)>> {
    let t_max = boundary_distance(k, from, d)?;
    let d = d.normalize();
    distances
        .iter()
        .map(|&delta| {
            let x = from + &d * (t_max - delta);
            Ok((delta, functional.value(&x, k, res)?))
        })
        .collect()
}
