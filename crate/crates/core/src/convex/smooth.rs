//! Smooth, positively curved bodies given by analytic support functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{min_eigenvalue, orthonormal_complement, restrict};
use crate::quadrature::{icosphere, sphere_rule, Resolution};
use crate::{Matrix, Vector};

/// A homogeneous polynomial `Σ c_k x^{p_k}` of even degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvenPolynomial {
    pub terms: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub powers: Vec<u32>,
}

impl EvenPolynomial {
    /// `cos 4θ` in the plane; a degree-4 harmonic on the sphere in 3D.
    pub fn default_for(dim: usize) -> EvenPolynomial {
        let m = |coeff: f64, powers: &[u32]| Monomial {
            coeff,
            powers: powers.to_vec(),
        };
        let terms = match dim {
            2 => vec![m(1.0, &[4, 0]), m(-6.0, &[2, 2]), m(1.0, &[0, 4])],
            _ => vec![
                m(1.0, &[4, 0, 0]),
                m(1.0, &[0, 4, 0]),
                m(1.0, &[0, 0, 4]),
                m(-3.0, &[2, 2, 0]),
                m(-3.0, &[0, 2, 2]),
                m(-3.0, &[2, 0, 2]),
            ],
        };
        EvenPolynomial { terms }
    }

    pub fn dim(&self) -> usize {
        self.terms.first().map_or(0, |t| t.powers.len())
    }

    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.powers.iter().sum())
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.terms.is_empty() {
            return Err(GeomError::InvalidSpec("polynomial has no terms".into()));
        }
        let d = self.degree();
        for t in &self.terms {
            if t.powers.len() != dim {
                return Err(GeomError::InvalidSpec("monomial arity differs from dimension".into()));
            }
            if t.powers.iter().sum::<u32>() != d {
                return Err(GeomError::InvalidSpec("polynomial is not homogeneous".into()));
            }
        }
        if d % 2 != 0 || d == 0 {
            return Err(GeomError::InvalidSpec("polynomial degree must be even and positive".into()));
        }
        Ok(())
    }

    fn pow(x: f64, p: u32) -> f64 {
        if p == 0 {
            1.0
        } else {
            x.powi(p as i32)
        }
    }

    pub fn eval(&self, x: &Vector) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * t.powers.iter().enumerate().map(|(k, &p)| Self::pow(x[k], p)).product::<f64>())
            .sum()
    }

    pub fn grad(&self, x: &Vector) -> Vector {
        let n = x.len();
        let mut g = Vector::zeros(n);
        for t in &self.terms {
            for i in 0..n {
                let pi = t.powers[i];
                if pi == 0 {
                    continue;
                }
                let mut v = t.coeff * pi as f64 * Self::pow(x[i], pi - 1);
                for (k, &p) in t.powers.iter().enumerate() {
                    if k != i {
                        v *= Self::pow(x[k], p);
                    }
                }
                g[i] += v;
            }
        }
        g
    }

    pub fn hess(&self, x: &Vector) -> Matrix {
        let n = x.len();
        let mut h = Matrix::zeros(n, n);
        for t in &self.terms {
            for i in 0..n {
                for j in 0..n {
                    let mut p = t.powers.clone();
                    let mut c = t.coeff;
                    for &k in &[i, j] {
                        if p[k] == 0 {
                            c = 0.0;
                            break;
                        }
                        c *= p[k] as f64;
                        p[k] -= 1;
                    }
                    if c == 0.0 {
                        continue;
                    }
                    h[(i, j)] += c * p.iter().enumerate().map(|(k, &q)| Self::pow(x[k], q)).product::<f64>();
                }
            }
        }
        h
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Base {
    /// Euclidean unit ball.
    Ball,
    /// `h0(w) = |w| + eps p(w) |w|^{1-d}`: the unit ball with support function
    /// perturbed by `eps` times `p` on the sphere.
    Perturbed { eps: f64, poly: EvenPolynomial },
}

/// Descriptive tag of a smooth body.
#[derive(Debug, Clone, PartialEq)]
pub enum SmoothKind {
    /// `{x : (x - c)^T Q (x - c) <= 1}`.
    Ellipsoid { q: Matrix, center: Vector },
    /// Affine image `M B_eps + c` of a perturbed unit ball.
    PerturbedBall {
        eps: f64,
        poly: EvenPolynomial,
        map: Matrix,
        center: Vector,
    },
}

/// The body `M B0 + s`, with support function `h(u) = h0(M^T u) + <u, s>`.
#[derive(Debug, Clone)]
pub struct SmoothBody {
    dim: usize,
    base: Base,
    map: Matrix,
    shift: Vector,
}

/// Normals at which curvature and positivity are probed.
fn probe_directions(dim: usize) -> Vec<Vector> {
    match dim {
        2 => (0..720)
            .map(|k| {
                let t = 2.0 * PI * (k as f64 + 0.5) / 720.0;
                Vector::from_vec(vec![t.cos(), t.sin()])
            })
            .collect(),
        _ => icosphere(3)
            .0
            .into_iter()
            .map(|v| Vector::from_vec(vec![v.x, v.y, v.z]))
            .collect(),
    }
}

impl SmoothBody {
    fn build(dim: usize, base: Base, map: Matrix, shift: Vector) -> Result<SmoothBody> {
        if !(2..=3).contains(&dim) {
            return Err(GeomError::Unsupported(format!("smooth bodies of dimension {dim}")));
        }
        if map.nrows() != dim || map.ncols() != dim || shift.len() != dim {
            return Err(GeomError::DimensionMismatch {
                expected: dim,
                found: map.nrows(),
            });
        }
        if map.determinant().abs() <= 1e-12 {
            return Err(GeomError::DegenerateBody("singular linear map".into()));
        }
        let body = SmoothBody { dim, base, map, shift };
        let mut worst = f64::INFINITY;
        for u in probe_directions(dim) {
            let (_, ht) = body.tangential_hessian(&u);
            worst = worst.min(min_eigenvalue(&ht));
        }
        let scale = body.map.norm();
        if !(worst > 1e-8 * scale) {
            return Err(GeomError::CurvatureDegenerate(worst));
        }
        Ok(body)
    }

    pub fn ball(dim: usize, radius: f64) -> Result<SmoothBody> {
        if !(radius > 0.0) {
            return Err(GeomError::InvalidSpec("radius must be positive".into()));
        }
        SmoothBody::build(dim, Base::Ball, Matrix::identity(dim, dim) * radius, Vector::zeros(dim))
    }

    /// `{x : x^T Q x <= 1}` for symmetric positive definite `Q`.
    pub fn ellipsoid(q: &Matrix) -> Result<SmoothBody> {
        let dim = q.nrows();
        if q.ncols() != dim {
            return Err(GeomError::InvalidSpec("Q must be square".into()));
        }
        if (q - q.transpose()).norm() > 1e-12 * q.norm() {
            return Err(GeomError::InvalidSpec("Q must be symmetric".into()));
        }
        let eig = q.clone().symmetric_eigen();
        if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
            return Err(GeomError::InvalidSpec("Q must be positive definite".into()));
        }
        // Body = Q^{-1/2} (unit ball).
        let inv_sqrt = &eig.eigenvectors
            * Matrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()))
            * eig.eigenvectors.transpose();
        SmoothBody::build(dim, Base::Ball, inv_sqrt, Vector::zeros(dim))
    }

    /// The unit ball with support function `1 + eps p` on the sphere.
    pub fn perturbed_ball(dim: usize, eps: f64, poly: EvenPolynomial) -> Result<SmoothBody> {
        poly.check(dim)?;
        SmoothBody::build(dim, Base::Perturbed { eps, poly }, Matrix::identity(dim, dim), Vector::zeros(dim))
    }

    /// Image under `x -> a x + t`.
    pub fn affine_image(&self, a: &Matrix, t: &Vector) -> Result<SmoothBody> {
        SmoothBody::build(self.dim, self.base.clone(), a * &self.map, a * &self.shift + t)
    }

    pub fn translate(&self, t: &Vector) -> SmoothBody {
        SmoothBody {
            dim: self.dim,
            base: self.base.clone(),
            map: self.map.clone(),
            shift: &self.shift + t,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center(&self) -> &Vector {
        &self.shift
    }

    pub fn kind(&self) -> SmoothKind {
        match &self.base {
            Base::Ball => {
                let mmt = &self.map * self.map.transpose();
                SmoothKind::Ellipsoid {
                    q: mmt.try_inverse().expect("map is invertible"),
                    center: self.shift.clone(),
                }
            }
            Base::Perturbed { eps, poly } => SmoothKind::PerturbedBall {
                eps: *eps,
                poly: poly.clone(),
                map: self.map.clone(),
                center: self.shift.clone(),
            },
        }
    }

    /// `Some(M M^T)` when the body is a centered ellipsoid: then the outer
    /// normal at `∇h(u)` is `M M^T u`.
    pub fn centered_ellipsoid_form(&self) -> Option<Matrix> {
        (matches!(self.base, Base::Ball) && self.shift.norm() == 0.0).then(|| &self.map * self.map.transpose())
    }

    fn base_eval(&self, w: &Vector) -> (f64, Vector, Matrix) {
        let n = self.dim;
        let r = w.norm();
        let what = w / r;
        let proj = (Matrix::identity(n, n) - &what * what.transpose()) / r;
        match &self.base {
            Base::Ball => (r, what, proj),
            Base::Perturbed { eps, poly } => {
                let d = poly.degree() as f64;
                let p = poly.eval(w);
                let gp = poly.grad(w);
                let hp = poly.hess(w);
                let a = r.powf(1.0 - d);
                let b = (1.0 - d) * r.powf(-1.0 - d);
                let c = (1.0 - d) * (-1.0 - d) * r.powf(-3.0 - d);
                let h = r + eps * p * a;
                let g = &what + (&gp * a + w * (p * b)) * *eps;
                let cross = &gp * w.transpose() + w * gp.transpose();
                let hh = proj
                    + (hp * a + cross * b + Matrix::identity(n, n) * (p * b) + w * w.transpose() * (p * c)) * *eps;
                (h, g, hh)
            }
        }
    }

    pub fn support(&self, u: &Vector) -> f64 {
        let w = self.map.transpose() * u;
        self.base_eval(&w).0 + u.dot(&self.shift)
    }

    /// Gradient of the support function: the boundary point with outer normal `u`.
    pub fn support_grad(&self, u: &Vector) -> Vector {
        let w = self.map.transpose() * u;
        &self.map * self.base_eval(&w).1 + &self.shift
    }

    pub fn support_hess(&self, u: &Vector) -> Matrix {
        let w = self.map.transpose() * u;
        &self.map * self.base_eval(&w).2 * self.map.transpose()
    }

    /// All three at once.
    pub fn support_all(&self, u: &Vector) -> (f64, Vector, Matrix) {
        let w = self.map.transpose() * u;
        let (h, g, hh) = self.base_eval(&w);
        (
            h + u.dot(&self.shift),
            &self.map * g + &self.shift,
            &self.map * hh * self.map.transpose(),
        )
    }

    /// Orthonormal basis of `u⊥` and the Hessian restricted to it (the inverse
    /// of the Weingarten map at the boundary point with unit normal `u`).
    pub fn tangential_hessian(&self, u: &Vector) -> (Vec<Vector>, Matrix) {
        let basis = orthonormal_complement(u);
        let h = self.support_hess(u);
        let r = restrict(&h, &basis);
        (basis, r)
    }

    /// Density of boundary surface measure with respect to the sphere measure
    /// under the Gauss map.
    pub fn gauss_jacobian(&self, u: &Vector) -> f64 {
        self.tangential_hessian(u).1.determinant()
    }

    /// Outer unit normal at the boundary point lying in direction `nu` from
    /// the origin, i.e. the `u` with `∇h(u)` a positive multiple of `nu`.
    /// Newton's method on the sphere, started at `u = nu`.
    pub fn radial_normal(&self, nu: &Vector) -> Result<Vector> {
        let nu = nu.normalize();
        let e_nu = orthonormal_complement(&nu);
        let residual = |u: &Vector| {
            let g = self.support_grad(u);
            let r = Vector::from_iterator(e_nu.len(), e_nu.iter().map(|e| e.dot(&g)));
            (r, g.dot(&nu))
        };
        let mut u = nu.clone();
        let (mut r, _) = residual(&u);
        let scale = self.map.norm();
        for _ in 0..100 {
            if r.norm() <= 1e-15 * scale {
                break;
            }
            let e_u = orthonormal_complement(&u);
            let hess = self.support_hess(&u);
            let m = e_nu.len();
            let jac = Matrix::from_fn(m, m, |i, j| e_nu[i].dot(&(&hess * &e_u[j])));
            let delta = jac.lu().solve(&-&r).ok_or(GeomError::CurvatureDegenerate(0.0))?;
            let mut step = 1.0;
            loop {
                let mut cand = u.clone();
                for (j, e) in e_u.iter().enumerate() {
                    cand += e * (step * delta[j]);
                }
                let cand = cand.normalize();
                let (rc, along) = residual(&cand);
                if along > 0.0 && rc.norm() < r.norm() {
                    u = cand;
                    r = rc;
                    break;
                }
                step *= 0.5;
                if step < 1e-12 {
                    return Ok(u);
                }
            }
        }
        if r.norm() > 1e-9 * scale || residual(&u).1 <= 0.0 {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(u)
    }

    /// Smallest support value over probe directions (positive iff the origin is
    /// interior, up to probe density).
    pub fn min_support(&self) -> f64 {
        probe_directions(self.dim)
            .iter()
            .map(|u| self.support(u))
            .fold(f64::INFINITY, f64::min)
    }

    /// Lower estimate of the distance from `x` to the boundary; positive iff `x` is interior.
    pub fn margin(&self, x: &Vector) -> f64 {
        if matches!(self.base, Base::Ball) {
            // x = M w + s is interior iff |w| < 1.
            let w = self
                .map
                .clone()
                .lu()
                .solve(&(x - &self.shift))
                .expect("map is invertible");
            let sv = self.map.singular_values();
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            return (1.0 - w.norm()) * smin;
        }
        probe_directions(self.dim)
            .iter()
            .map(|u| self.support(u) - u.dot(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn diameter(&self) -> f64 {
        probe_directions(self.dim)
            .iter()
            .map(|u| self.support(u) + self.support(&-u))
            .fold(0.0, f64::max)
    }

    /// Volume `(1/n) ∫ h J du`.
    pub fn volume(&self, res: &Resolution) -> f64 {
        let nodes = sphere_rule(self.dim, res, &[]);
        nodes
            .iter()
            .map(|q| q.weight * self.support(&q.u) * self.gauss_jacobian(&q.u))
            .sum::<f64>()
            / self.dim as f64
    }

    /// Volume of the polar body `(1/n) ∫ h^{-n} du`.
    pub fn polar_volume(&self, res: &Resolution) -> Result<f64> {
        if !(self.min_support() > 0.0) {
            return Err(GeomError::OriginNotInterior);
        }
        let nodes = sphere_rule(self.dim, res, &[]);
        Ok(nodes
            .iter()
            .map(|q| q.weight * self.support(&q.u).powi(-(self.dim as i32)))
            .sum::<f64>()
            / self.dim as f64)
    }

    /// Polar body; available for centered ellipsoids, whose polar is `M^{-T} B`.
    pub fn polar(&self) -> Result<SmoothBody> {
        if self.centered_ellipsoid_form().is_none() {
            return Err(GeomError::Unsupported("polar of a smooth body other than a centered ellipsoid".into()));
        }
        let inv_t = self.map.clone().try_inverse().expect("map is invertible").transpose();
        SmoothBody::build(self.dim, Base::Ball, inv_t, Vector::zeros(self.dim))
    }

    /// Support function of the section `H ∩ (K - x)` at `w ∈ H`, where `H = n⊥`:
    /// `min_t h_{K-x}(w + t n)`.
    pub fn section_support(&self, normal: &Vector, w: &Vector, x: &Vector) -> Result<f64> {
        Ok(self.section_support_point(normal, w, x)?.0)
    }

    /// [`SmoothBody::section_support`] together with the minimizing `z = w + t n`,
    /// which is minus the gradient of the value with respect to `x`.
    pub fn section_support_point(&self, normal: &Vector, w: &Vector, x: &Vector) -> Result<(f64, Vector)> {
        let f = |t: f64| {
            let z = w + normal * t;
            let (h, g, hh) = self.support_all(&z);
            (h - z.dot(x), g.dot(normal) - x.dot(normal), normal.dot(&(&hh * normal)))
        };
        let scale = (self.map.norm() + self.shift.norm() + x.norm()).max(1e-12) * w.norm().max(1e-300);
        let mut step = w.norm().max(1e-300);
        let (mut lo, mut hi) = (0.0, 0.0);
        let d0 = f(0.0).1;
        if d0 < 0.0 {
            let mut k = 0;
            while f(hi).1 < 0.0 {
                lo = hi;
                hi += step;
                step *= 2.0;
                k += 1;
                if k > 60 {
                    return Err(GeomError::PointNotInterior);
                }
            }
        } else {
            let mut k = 0;
            while f(lo).1 > 0.0 {
                hi = lo;
                lo -= step;
                step *= 2.0;
                k += 1;
                if k > 60 {
                    return Err(GeomError::PointNotInterior);
                }
            }
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let (_, d, dd) = f(t);
            if d.abs() <= 1e-15 * scale {
                break;
            }
            if d < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let newton = t - d / dd;
            t = if dd > 0.0 && newton >= lo && newton <= hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (hi - lo).abs() <= 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        let v = f(t).0;
        if !(v > 0.0) {
            return Err(GeomError::PointNotInterior);
        }
        Ok((v, w + normal * t))
    }

    /// `|(H ∩ (K - x))°|` with `H = normal⊥`, from the section's support function:
    /// `(1/(n-1)) ∫_{S(H)} h^{-(n-1)}`.
    pub fn slice_polar_volume(&self, normal: &Vector, x: &Vector, res: &Resolution) -> Result<f64> {
        let basis = orthonormal_complement(normal);
        match self.dim {
            2 => {
                let e = &basis[0];
                Ok(1.0 / self.section_support(normal, e, x)? + 1.0 / self.section_support(normal, &-e, x)?)
            }
            _ => {
                let m = (res.circle_nodes / 4).max(32);
                let mut s = 0.0;
                for k in 0..m {
                    let t = 2.0 * PI * k as f64 / m as f64;
                    let w = &basis[0] * t.cos() + &basis[1] * t.sin();
                    s += self.section_support(normal, &w, x)?.powi(-2);
                }
                Ok(0.5 * s * 2.0 * PI / m as f64)
            }
        }
    }

    /// [`SmoothBody::slice_polar_volume`] and its gradient in `x`. Each section
    /// support value `h` has gradient `-z` (its minimizer), so the gradient of
    /// `(1/(n-1)) ∫ h^{-(n-1)}` is `∫ h^{-n} z`.
    pub fn slice_polar_volume_gradient(&self, normal: &Vector, x: &Vector, res: &Resolution) -> Result<(f64, Vector)> {
        let basis = orthonormal_complement(normal);
        match self.dim {
            2 => {
                let e = &basis[0];
                let (hp, zp) = self.section_support_point(normal, e, x)?;
                let (hm, zm) = self.section_support_point(normal, &-e, x)?;
                Ok((1.0 / hp + 1.0 / hm, zp / (hp * hp) + zm / (hm * hm)))
            }
            _ => {
                let m = (res.circle_nodes / 4).max(32);
                let (mut s, mut g) = (0.0, Vector::zeros(self.dim));
                for k in 0..m {
                    let t = 2.0 * PI * k as f64 / m as f64;
                    let w = &basis[0] * t.cos() + &basis[1] * t.sin();
                    let (h, z) = self.section_support_point(normal, &w, x)?;
                    s += h.powi(-2);
                    g += z * h.powi(-3);
                }
                let dt = 2.0 * PI / m as f64;
                Ok((0.5 * s * dt, g * dt))
            }
        }
    }

    /// Volume of the orthogonal projection onto `normal⊥`.
    pub fn projection_volume(&self, normal: &Vector, res: &Resolution) -> f64 {
        let basis = orthonormal_complement(normal);
        match self.dim {
            2 => self.support(&basis[0]) + self.support(&-&basis[0]),
            _ => {
                // Planar body with support function p(θ): area = (1/2) ∮ (p² - p'²) dθ.
                let m = (res.circle_nodes / 4).max(32);
                let mut s = 0.0;
                for k in 0..m {
                    let t = 2.0 * PI * k as f64 / m as f64;
                    let w = &basis[0] * t.cos() + &basis[1] * t.sin();
                    let dw = &basis[1] * t.cos() - &basis[0] * t.sin();
                    let p = self.support(&w);
                    let dp = self.support_grad(&w).dot(&dw);
                    s += p * p - dp * dp;
                }
                0.5 * s * 2.0 * PI / m as f64
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn fd_check(b: &SmoothBody, u: &Vector) {
        let h = 1e-6;
        let g = b.support_grad(u);
        let hh = b.support_hess(u);
        for k in 0..u.len() {
            let mut e = Vector::zeros(u.len());
            e[k] = h;
            let fd = (b.support(&(u + &e)) - b.support(&(u - &e))) / (2.0 * h);
            assert!((fd - g[k]).abs() < 1e-7, "grad {k}: {fd} vs {}", g[k]);
            let gd = (b.support_grad(&(u + &e)) - b.support_grad(&(u - &e))) / (2.0 * h);
            for i in 0..u.len() {
                assert!((gd[i] - hh[(i, k)]).abs() < 1e-6, "hess");
            }
        }
    }

    #[test]
    fn ellipsoid_support() {
        let q = Matrix::from_diagonal(&vector(&[1.0, 4.0]));
        let e = SmoothBody::ellipsoid(&q).unwrap();
        assert!((e.support(&vector(&[0.0, 1.0])) - 0.5).abs() < 1e-15);
        let x = e.support_grad(&vector(&[0.3, 0.7]).normalize());
        assert!((x.dot(&(&q * &x)) - 1.0).abs() < 1e-12);
        fd_check(&e, &vector(&[0.3, -0.7]));
    }

    #[test]
    fn perturbed_ball_derivatives() {
        for dim in [2, 3] {
            let b = SmoothBody::perturbed_ball(dim, 0.03, EvenPolynomial::default_for(dim)).unwrap();
            let b = b
                .affine_image(&(Matrix::identity(dim, dim) + Matrix::from_element(dim, dim, 0.1)), &Vector::from_element(dim, 0.05))
                .unwrap();
            let u = Vector::from_fn(dim, |i, _| 0.2 + 0.3 * i as f64 - 0.1 * (i * i) as f64);
            fd_check(&b, &u);
            assert!((b.support(&(&u * 2.5)) - 2.5 * b.support(&u)).abs() < 1e-12);
        }
    }

    #[test]
    fn over_perturbed_ball_is_rejected() {
        let r = SmoothBody::perturbed_ball(2, 0.2, EvenPolynomial::default_for(2));
        assert!(matches!(r, Err(GeomError::CurvatureDegenerate(_))));
    }

    #[test]
    fn ball_volumes() {
        let res = Resolution::default();
        let d = SmoothBody::ball(2, 2.0).unwrap();
        assert!((d.volume(&res) - 4.0 * PI).abs() < 1e-10);
        assert!((d.polar_volume(&res).unwrap() - PI / 4.0).abs() < 1e-10);
        let b = SmoothBody::ball(3, 1.0).unwrap();
        assert!((b.volume(&res) - 4.0 * PI / 3.0).abs() < 1e-7);
    }

    #[test]
    fn sections_of_a_disc() {
        let d = SmoothBody::ball(2, 1.0).unwrap();
        let res = Resolution::default();
        // chord through (0, 0.6) parallel to x-axis has half-length 0.8
        let v = d.slice_polar_volume(&vector(&[0.0, 1.0]), &vector(&[0.0, 0.6]), &res).unwrap();
        assert!((v - 2.0 / 0.8).abs() < 1e-12, "{v}");
        assert_eq!(
            d.slice_polar_volume(&vector(&[0.0, 1.0]), &vector(&[0.0, 1.5]), &res),
            Err(GeomError::PointNotInterior)
        );
        let b = SmoothBody::ball(3, 1.0).unwrap();
        let v = b.slice_polar_volume(&vector(&[0.0, 0.0, 1.0]), &vector(&[0.0, 0.0, 0.6]), &res).unwrap();
        assert!((v - PI / 0.64).abs() < 1e-10);
        assert!((b.projection_volume(&vector(&[1.0, 0.0, 0.0]), &res) - PI).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_polar() {
        let q = Matrix::from_diagonal(&vector(&[1.0, 4.0]));
        let e = SmoothBody::ellipsoid(&q).unwrap();
        let p = e.polar().unwrap();
        // polar of x^2 + 4y^2 <= 1 is x^2 + y^2/4 <= 1
        assert!((p.support(&vector(&[0.0, 1.0])) - 2.0).abs() < 1e-14);
    }
}
