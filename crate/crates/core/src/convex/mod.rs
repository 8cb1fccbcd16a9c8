//! Convex bodies: polytopes and smooth bodies, with polarity, volumes,
//! sections and projections.

mod hull;
mod polytope;
mod smooth;
mod spec;

pub use hull::{hull_2d, hull_3d, hull_brute_force, HullFacet};
pub use polytope::{Facet, Polytope};
pub use smooth::{EvenPolynomial, Monomial, SmoothBody, SmoothKind};
pub use spec::BodySpec;

use crate::error::{GeomError, Result};
use crate::linalg::orthonormal_complement;
use crate::quadrature::{sphere_rule, Resolution, SphereNode};
use crate::{Matrix, Vector};

#[derive(Debug, Clone)]
pub enum ConvexBody {
    Polytope(Polytope),
    Smooth(SmoothBody),
}

impl From<Polytope> for ConvexBody {
    fn from(p: Polytope) -> Self {
        ConvexBody::Polytope(p)
    }
}

impl From<SmoothBody> for ConvexBody {
    fn from(s: SmoothBody) -> Self {
        ConvexBody::Smooth(s)
    }
}

/// A hyperplane through the origin, stored by a unit normal whose first
/// non-negligible coordinate is positive (so `H` and its negated normal agree).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearHyperplane {
    normal: Vector,
}

impl LinearHyperplane {
    pub fn new(normal: &Vector) -> Result<LinearHyperplane> {
        let r = normal.norm();
        if !(r > 0.0) || !r.is_finite() {
            return Err(GeomError::ZeroDirection);
        }
        let mut u = normal / r;
        if let Some(k) = u.iter().position(|c| c.abs() > 1e-12) {
            if u[k] < 0.0 {
                u = -u;
            }
        }
        Ok(LinearHyperplane { normal: u })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Orthonormal basis of the hyperplane.
    pub fn basis(&self) -> Vec<Vector> {
        orthonormal_complement(&self.normal)
    }

    pub fn approx_eq(&self, other: &LinearHyperplane, tol: f64) -> bool {
        (&self.normal - &other.normal).norm() <= tol
    }
}

/// Push-forward of boundary surface measure to hyperplane directions.
#[derive(Debug, Clone)]
pub enum SurfaceAreaMeasure {
    /// Facet directions with total facet area (antipodal facets merged).
    Atomic(Vec<(LinearHyperplane, f64)>),
    /// Quadrature nodes on the sphere, weighted by the Gauss-map Jacobian.
    Density(Vec<SphereNode>),
}

impl SurfaceAreaMeasure {
    pub fn total_mass(&self) -> f64 {
        match self {
            SurfaceAreaMeasure::Atomic(a) => a.iter().map(|(_, w)| w).sum(),
            SurfaceAreaMeasure::Density(d) => d.iter().map(|q| q.weight).sum(),
        }
    }
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polytope(p) => p.dim(),
            ConvexBody::Smooth(s) => s.dim(),
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            ConvexBody::Polytope(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_smooth(&self) -> Option<&SmoothBody> {
        match self {
            ConvexBody::Smooth(s) => Some(s),
            _ => None,
        }
    }

    pub fn support(&self, u: &Vector) -> Result<f64> {
        if u.len() != self.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        if u.iter().all(|&c| c == 0.0) {
            return Err(GeomError::ZeroDirection);
        }
        Ok(match self {
            ConvexBody::Polytope(p) => p.support(u),
            ConvexBody::Smooth(s) => s.support(u),
        })
    }

    pub fn translate(&self, t: &Vector) -> ConvexBody {
        match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.translate(t)),
            ConvexBody::Smooth(s) => ConvexBody::Smooth(s.translate(t)),
        }
    }

    pub fn affine_image(&self, a: &Matrix, t: &Vector) -> Result<ConvexBody> {
        Ok(match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.affine_image(a, t)?),
            ConvexBody::Smooth(s) => ConvexBody::Smooth(s.affine_image(a, t)?),
        })
    }

    /// Positive iff `x` is an interior point (distance-like, exact for polytopes).
    pub fn margin(&self, x: &Vector) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.margin(x),
            ConvexBody::Smooth(s) => s.margin(x),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.diameter(),
            ConvexBody::Smooth(s) => s.diameter(),
        }
    }

    /// A canonical interior point: vertex barycenter or center.
    pub fn interior_point(&self) -> Vector {
        match self {
            ConvexBody::Polytope(p) => p.vertex_barycenter(),
            ConvexBody::Smooth(s) => s.center().clone(),
        }
    }

    pub fn volume(&self, res: &Resolution) -> Result<f64> {
        match self {
            ConvexBody::Polytope(p) => p.volume(),
            ConvexBody::Smooth(s) => Ok(s.volume(res)),
        }
    }

    /// `|K°|`.
    pub fn polar_volume(&self, res: &Resolution) -> Result<f64> {
        match self {
            ConvexBody::Polytope(p) => p.polar()?.volume(),
            ConvexBody::Smooth(s) => s.polar_volume(res),
        }
    }

    pub fn polar(&self) -> Result<ConvexBody> {
        Ok(match self {
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.polar()?),
            ConvexBody::Smooth(s) => ConvexBody::Smooth(s.polar()?),
        })
    }

    /// `f_K(H, x) = |(H ∩ (K - x))°|_{n-1}`.
    ///
    /// For polytopes this goes through `π_H((K - x)°)` (polar, project, hull,
    /// volume); for smooth bodies through the section's support function.
    pub fn slice_polar_volume(&self, h: &LinearHyperplane, x: &Vector, res: &Resolution) -> Result<f64> {
        if self.margin(x) <= 0.0 {
            return Err(GeomError::PointNotInterior);
        }
        match self {
            ConvexBody::Polytope(p) => {
                let polar = p.translate(&-x).polar().map_err(|_| GeomError::PointNotInterior)?;
                polar.project(h.normal())?.volume()
            }
            ConvexBody::Smooth(s) => s.slice_polar_volume(h.normal(), x, res),
        }
    }

    /// `|π_{u⊥}(K)|_{n-1}` for a unit vector `u`.
    pub fn projection_volume(&self, u: &Vector, res: &Resolution) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.projection_volume(u),
            ConvexBody::Smooth(s) => s.projection_volume(u, res),
        }
    }

    pub fn surface_area_measure(&self, res: &Resolution) -> Result<SurfaceAreaMeasure> {
        match self {
            ConvexBody::Polytope(p) => {
                let mut atoms: Vec<(LinearHyperplane, f64)> = Vec::new();
                for f in p.facets() {
                    let h = LinearHyperplane::new(&f.normal)?;
                    match atoms.iter_mut().find(|(g, _)| g.approx_eq(&h, 1e-9)) {
                        Some((_, w)) => *w += f.area,
                        None => atoms.push((h, f.area)),
                    }
                }
                Ok(SurfaceAreaMeasure::Atomic(atoms))
            }
            ConvexBody::Smooth(s) => {
                let nodes = sphere_rule(s.dim(), res, &[])
                    .into_iter()
                    .map(|q| SphereNode {
                        weight: q.weight * s.gauss_jacobian(&q.u),
                        u: q.u,
                    })
                    .collect();
                Ok(SurfaceAreaMeasure::Density(nodes))
            }
        }
    }
}
