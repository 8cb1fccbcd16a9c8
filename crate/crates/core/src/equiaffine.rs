//! Blaschke normal, equiaffine metric and the dual centroid `C_B(K*)` on the
//! boundary of a smooth, positively curved body.
//!
//! Points of `∂B` are addressed by their unit outer normal `u` (Gauss-map
//! parametrization `x = ∇h(u)`). Moving the point with velocity `w` moves the
//! normal with velocity `S w`, where `S` is the inverse of the tangential
//! Hessian of `h`.

use crate::convex::{ConvexBody, Polytope, SmoothBody};
use crate::error::{GeomError, Result};
use crate::linalg::{det_columns, min_eigenvalue, orthonormal_complement};
use crate::quadrature::{ordered_vector_sum, sphere_rule, Resolution};
use crate::{Matrix, Vector};

/// Finite-difference step for third-order data.
pub const FD_STEP: f64 = 1e-4;

/// A boundary point with a basis of its tangent space.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub x: Vector,
    /// Unit outer normal at `x`.
    pub normal: Vector,
    pub basis: Vec<Vector>,
}

impl TangentFrame {
    /// Orthonormal frame at the point with outer normal `u`, positively
    /// oriented: `det(u, e_1, ..., e_{n-1}) = 1`.
    pub fn orthonormal(b: &SmoothBody, u: &Vector) -> TangentFrame {
        let u = u.normalize();
        TangentFrame {
            x: b.support_grad(&u),
            basis: orthonormal_complement(&u),
            normal: u,
        }
    }

    /// Frame with basis `Σ_j coeffs[(j, i)] e_j` built from the orthonormal frame.
    pub fn from_coefficients(b: &SmoothBody, u: &Vector, coeffs: &Matrix) -> Result<TangentFrame> {
        let base = TangentFrame::orthonormal(b, u);
        let m = base.basis.len();
        if coeffs.nrows() != m || coeffs.ncols() != m {
            return Err(GeomError::DimensionMismatch {
                expected: m,
                found: coeffs.nrows(),
            });
        }
        let basis = (0..m)
            .map(|i| {
                let mut v = Vector::zeros(u.len());
                for j in 0..m {
                    v += &base.basis[j] * coeffs[(j, i)];
                }
                v
            })
            .collect();
        let frame = TangentFrame { basis, ..base };
        frame.validate()?;
        Ok(frame)
    }

    /// Same point, basis vectors multiplied by `lambdas`.
    pub fn scaled(&self, lambdas: &[f64]) -> TangentFrame {
        TangentFrame {
            x: self.x.clone(),
            normal: self.normal.clone(),
            basis: self.basis.iter().zip(lambdas).map(|(v, l)| v * *l).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for v in &self.basis {
            if v.dot(&self.normal).abs() > 1e-8 * v.norm() {
                return Err(GeomError::DegenerateBody("frame vector is not tangent".into()));
            }
        }
        let mut cols: Vec<&Vector> = vec![&self.normal];
        cols.extend(self.basis.iter());
        let scale: f64 = self.basis.iter().map(|v| v.norm()).product();
        if det_columns(&cols).abs() <= 1e-10 * scale {
            return Err(GeomError::DegenerateBody("frame vectors are dependent".into()));
        }
        Ok(())
    }
}

/// Equiaffine data at one boundary point.
#[derive(Debug, Clone)]
pub struct EquiaffineData {
    pub x: Vector,
    pub normal: Vector,
    /// Blaschke normal (points inward).
    pub xi: Vector,
    /// Equiaffine metric in the orthonormal frame at `x`.
    pub g: Matrix,
    /// Equiaffine area density `sqrt(det g)` with respect to the orthonormal frame.
    pub alpha_density: f64,
    /// Scale factor of the Blaschke normal relative to the inward unit normal.
    pub phi: f64,
}

/// Tangential Hessian at `u` in the orthonormal complement basis, checked for curvature.
fn curvature(b: &SmoothBody, u: &Vector) -> Result<(Vec<Vector>, Matrix)> {
    let (basis, ht) = b.tangential_hessian(u);
    let lmin = min_eigenvalue(&ht);
    if !(lmin > 1e-8) {
        return Err(GeomError::CurvatureDegenerate(lmin));
    }
    Ok((basis, ht))
}

/// `S w` as an ambient vector: velocity of the unit normal when the point moves with velocity `w`.
fn normal_velocity(basis: &[Vector], ht: &Matrix, w: &Vector) -> Vector {
    let m = basis.len();
    let c = Vector::from_iterator(m, basis.iter().map(|e| e.dot(w)));
    let s = ht.clone().lu().solve(&c).expect("tangential Hessian is invertible");
    let mut out = Vector::zeros(w.len());
    for (i, e) in basis.iter().enumerate() {
        out += e * s[i];
    }
    out
}

fn phi_at(b: &SmoothBody, u: &Vector) -> f64 {
    let n = u.len() as f64;
    b.tangential_hessian(u).1.determinant().powf(-1.0 / (n + 1.0))
}

/// Blaschke normal at the boundary point with outer normal `u`.
///
/// Starting from the inward unit normal `ξ0 = -u` with induced form `g0 = S`,
/// the normal is `Ξ = φ ξ0 + Z` with `φ = det(S)^{1/(n+1)}` and the tangential
/// correction `Z = -g0^{-1} dφ`; then `g = g0 / φ`.
pub fn blaschke_normal(b: &SmoothBody, u: &Vector) -> Result<EquiaffineData> {
    let r = u.norm();
    if !(r > 0.0) {
        return Err(GeomError::ZeroDirection);
    }
    let u = u / r;
    let (basis, ht) = curvature(b, &u)?;
    let n = u.len();
    let phi = ht.determinant().powf(-1.0 / (n as f64 + 1.0));
    let h = FD_STEP;
    let dphi = Vector::from_iterator(
        n - 1,
        basis.iter().map(|e| {
            let du = normal_velocity(&basis, &ht, e);
            let up = (&u + &du * h).normalize();
            let um = (&u - &du * h).normalize();
            (phi_at(b, &up) - phi_at(b, &um)) / (2.0 * h)
        }),
    );
    let zc = &ht * dphi;
    let mut xi = &u * (-phi);
    for (i, e) in basis.iter().enumerate() {
        xi -= e * zc[i];
    }
    let s = ht.clone().try_inverse().expect("tangential Hessian is invertible");
    let g = s / phi;
    let alpha_density = g.determinant().sqrt();
    Ok(EquiaffineData {
        x: b.support_grad(&u),
        normal: u,
        xi,
        g,
        alpha_density,
        phi,
    })
}

/// Residuals of the two defining conditions of the Blaschke normal in `frame`:
/// `(max_v |<D_v Ξ, u>| / (|Ξ| |v|), |det(Ξ, ξ)^2 - det g(ξ_i, ξ_j)| / det g)`.
///
/// `D_v Ξ` and the metric are both measured by finite differences along
/// boundary curves; the metric comes from the transversal component of the
/// curve acceleration, `g(X, X) = <c'', u> / <Ξ, u>`.
pub fn condition_residuals(b: &SmoothBody, frame: &TangentFrame) -> Result<(f64, f64)> {
    let u = frame.normal.clone();
    let data = blaschke_normal(b, &u)?;
    let (basis, ht) = curvature(b, &u)?;
    let h = FD_STEP;
    let mut tangency: f64 = 0.0;
    for v in &frame.basis {
        let du = normal_velocity(&basis, &ht, v);
        let diff = |s: f64| -> Result<Vector> {
            let xp = blaschke_normal(b, &(&u + &du * s).normalize())?.xi;
            let xm = blaschke_normal(b, &(&u - &du * s).normalize())?.xi;
            Ok((xp - xm) / (2.0 * s))
        };
        let s = h / v.norm();
        let dxi = (diff(0.5 * s)? * 4.0 - diff(s)?) / 3.0;
        tangency = tangency.max(dxi.dot(&u).abs() / (data.xi.norm() * v.norm()));
    }
    let quad = |w: &Vector| {
        if w.norm() == 0.0 {
            return 0.0;
        }
        let du = normal_velocity(&basis, &ht, w);
        let c = |t: f64| b.support_grad(&(&u + &du * t).normalize());
        let acc = |s: f64| (c(s) - c(0.0) * 2.0 + c(-s)).dot(&u) / (s * s);
        // Richardson-extrapolated second difference, step of fixed arc length.
        let s = 10.0 * h / w.norm();
        (acc(0.5 * s) * 4.0 - acc(s)) / (3.0 * data.xi.dot(&u))
    };
    let m = frame.basis.len();
    let gm = Matrix::from_fn(m, m, |i, j| {
        let (a, c) = (&frame.basis[i], &frame.basis[j]);
        0.25 * (quad(&(a + c)) - quad(&(a - c)))
    });
    let mut cols: Vec<&Vector> = vec![&data.xi];
    cols.extend(frame.basis.iter());
    let d = det_columns(&cols);
    let detg = gm.determinant();
    Ok((tangency, (d * d - detg).abs() / detg.abs()))
}

/// Distance of `Ξ` from the line through the center of the body and `x`,
/// relative to `|Ξ|`.
pub fn collinearity_residual(data: &EquiaffineData, center: &Vector) -> f64 {
    let d = (&data.x - center).normalize();
    let xi = &data.xi;
    (xi - &d * xi.dot(&d)).norm() / xi.norm()
}

/// `L_{i,j}(ξ) = det(D_{ξ_i} X_j, ξ_1, ..., ξ_{n-1})` with the extension
/// `X_j = ξ_j - <ξ_j, ν> ν` (`ν` the unit normal field), differentiated by a
/// Richardson-extrapolated central difference along the boundary.
pub fn l_matrix(b: &SmoothBody, frame: &TangentFrame) -> Result<Matrix> {
    let u = frame.normal.clone();
    let (basis, ht) = curvature(b, &u)?;
    let m = frame.basis.len();
    let ext = |xi: &Vector, nu: &Vector| xi - nu * xi.dot(nu);
    let mut l = Matrix::zeros(m, m);
    for i in 0..m {
        let v = &frame.basis[i];
        // Step in the curve parameter scaled so the sampled points do not
        // depend on |ξ_i|.
        let du = normal_velocity(&basis, &ht, v);
        let t = FD_STEP / v.norm();
        for j in 0..m {
            let xj = &frame.basis[j];
            let diff = |s: f64| {
                let up = (&u + &du * s).normalize();
                let um = (&u - &du * s).normalize();
                (ext(xj, &up) - ext(xj, &um)) / (2.0 * s)
            };
            let d = (diff(0.5 * t) * 4.0 - diff(t)) / 3.0;
            let mut cols: Vec<&Vector> = vec![&d];
            cols.extend(frame.basis.iter());
            l[(i, j)] = det_columns(&cols);
        }
    }
    Ok(l)
}

pub fn l_value(b: &SmoothBody, frame: &TangentFrame) -> Result<f64> {
    Ok(l_matrix(b, frame)?.determinant())
}

/// `det(Ξ(x), ξ_1, ..., ξ_{n-1})`.
pub fn xi_determinant(b: &SmoothBody, frame: &TangentFrame) -> Result<f64> {
    let data = blaschke_normal(b, &frame.normal)?;
    let mut cols: Vec<&Vector> = vec![&data.xi];
    cols.extend(frame.basis.iter());
    Ok(det_columns(&cols))
}

fn polar_of(k: &ConvexBody) -> Result<Polytope> {
    match k {
        ConvexBody::Polytope(p) => p.polar(),
        ConvexBody::Smooth(_) => Err(GeomError::Unsupported(
            "dual centroid of a smooth body K".into(),
        )),
    }
}

/// `C_B(K*) = ∫_{∂B} ∫_{π_x(K*)} q dν_x(q) dμ(x)` with `μ` the Euclidean
/// surface measure of `∂B`.
pub fn dual_centroid(k: &ConvexBody, b: &SmoothBody, res: &Resolution) -> Result<Vector> {
    dual_centroid_with_density(k, b, res, |_| 1.0)
}

/// [`dual_centroid`] computed with the boundary measure `ρ μ` in place of `μ`
/// (and the fibre measures `ν_x` rescaled accordingly). The result does not
/// depend on `ρ`.
pub fn dual_centroid_with_density(
    k: &ConvexBody,
    b: &SmoothBody,
    res: &Resolution,
    rho: impl Fn(&Vector) -> f64 + Sync + Send,
) -> Result<Vector> {
    let n = b.dim();
    if k.dim() != n {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            found: k.dim(),
        });
    }
    let kp = polar_of(k)?;
    let cuts: Vec<Vector> = kp.facets().iter().map(|f| f.normal.clone()).collect();
    let nodes = sphere_rule(n, res, &cuts);
    ordered_vector_sum(&nodes, n, |q| {
        let u = &q.u;
        let data = blaschke_normal(b, u)?;
        let basis = orthonormal_complement(u);
        let r = rho(u);
        // f_i = r^{-1/(n-1)} e_i is unimodular for r μ_x; dual lifts scale the other way.
        let s = r.powf(1.0 / (n as f64 - 1.0));
        let lifts: Vec<Vector> = basis
            .iter()
            .map(|e| (e - u * (e.dot(&data.xi) / u.dot(&data.xi))) * s)
            .collect();
        // Coordinates of the projected polar body in the basis dual to f.
        let pts: Vec<Vector> = kp
            .vertices()
            .iter()
            .map(|v| Vector::from_iterator(n - 1, basis.iter().map(|e| e.dot(v) / s)))
            .collect();
        let moment = Polytope::from_points(&pts)?.centroid_integral()?;
        let mut c = Vector::zeros(n);
        for (i, eta) in lifts.iter().enumerate() {
            c += eta * moment[i];
        }
        Ok(c * (q.weight * b.gauss_jacobian(u) * r))
    })
}

/// `∫_{S^{n-1}} ∫_{π_{u⊥}(K°)} y dy du`: the sphere average of the moments of
/// orthogonal projections of `K°`.
pub fn projection_moment_average(k: &ConvexBody, res: &Resolution) -> Result<Vector> {
    let kp = polar_of(k)?;
    let n = kp.dim();
    let cuts: Vec<Vector> = kp.facets().iter().map(|f| f.normal.clone()).collect();
    let nodes = sphere_rule(n, res, &cuts);
    ordered_vector_sum(&nodes, n, |q| {
        let basis = orthonormal_complement(&q.u);
        let m = kp.project(&q.u)?.centroid_integral()?;
        let mut c = Vector::zeros(n);
        for (i, e) in basis.iter().enumerate() {
            c += e * m[i];
        }
        Ok(c * q.weight)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::EvenPolynomial;
    use crate::linalg::vector;

    #[test]
    fn sphere_normal_is_minus_x() {
        let b = SmoothBody::ball(3, 1.0).unwrap();
        let u = vector(&[0.2, -0.5, 0.7]).normalize();
        let d = blaschke_normal(&b, &u).unwrap();
        assert!((&d.xi + &d.x).norm() < 1e-10);
        let f = TangentFrame::orthonormal(&b, &u);
        assert!((l_value(&b, &f).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn circle_of_radius_two() {
        let b = SmoothBody::ball(2, 2.0).unwrap();
        let u = vector(&[0.6, 0.8]);
        let d = blaschke_normal(&b, &u).unwrap();
        let expect = &d.x * (-(2f64).powf(-4.0 / 3.0));
        assert!((&d.xi - expect).norm() < 1e-10);
        let f = TangentFrame::orthonormal(&b, &u);
        let (t, v) = condition_residuals(&b, &f).unwrap();
        assert!(t < 1e-6 && v < 1e-6, "{t} {v}");
    }

    #[test]
    fn perturbed_ball_conditions() {
        let b = SmoothBody::perturbed_ball(3, 0.03, EvenPolynomial::default_for(3)).unwrap();
        let u = vector(&[0.3, 0.1, -0.9]).normalize();
        let f = TangentFrame::from_coefficients(&b, &u, &Matrix::from_row_slice(2, 2, &[1.0, 0.4, -0.2, 0.7])).unwrap();
        let (t, v) = condition_residuals(&b, &f).unwrap();
        assert!(t < 1e-6 && v < 1e-6, "{t} {v}");
        let l = l_matrix(&b, &f).unwrap();
        assert!((l[(0, 1)] - l[(1, 0)]).abs() < 1e-10 * l.norm());
        let lhs = l.determinant();
        let rhs = xi_determinant(&b, &f).unwrap().powi(4);
        assert!((lhs - rhs).abs() < 1e-6 * rhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn ball_dual_centroid_is_projection_average() {
        let res = Resolution::new(128, 2);
        let k: ConvexBody = Polytope::from_points(&[vector(&[1.0, 0.3]), vector(&[-0.8, 0.9]), vector(&[-0.5, -1.1])])
            .unwrap()
            .into();
        let b = SmoothBody::ball(2, 1.0).unwrap();
        let c = dual_centroid(&k, &b, &res).unwrap();
        let cs = projection_moment_average(&k, &res).unwrap();
        assert!((&c - &cs).norm() < 1e-12 * cs.norm().max(1.0));
        let c2 = dual_centroid_with_density(&k, &b, &res, |u| 1.0 + 0.3 * u[0] * u[0] + 0.2 * u[0] * u[1]).unwrap();
        assert!((&c - c2).norm() < 1e-12 * c.norm());
    }
}
