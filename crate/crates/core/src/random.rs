//! Seeded generators of random bodies, points and affine maps.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::convex::{ConvexBody, Polytope};
use crate::{Matrix, Vector};

fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| StandardNormal.sample(rng)))
}

/// Uniformly distributed unit vector.
pub fn random_direction<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        let r = v.norm();
        if r > 1e-6 {
            return v / r;
        }
    }
}

/// Hull of `points` random points at radii in `[0.5, 1.5]`, redrawn until the
/// origin is at distance at least 0.1 from every facet.
pub fn random_polytope<R: Rng>(rng: &mut R, dim: usize, points: usize) -> Polytope {
    loop {
        let pts: Vec<Vector> = (0..points.max(dim + 1))
            .map(|_| random_direction(rng, dim) * rng.gen_range(0.5..1.5))
            .collect();
        if let Ok(p) = Polytope::from_points(&pts) {
            if p.margin(&Vector::zeros(dim)) > 0.1 && p.vertices().len() > dim {
                return p;
            }
        }
    }
}

/// Invertible matrix with singular values in a bounded range (condition number <= 8).
pub fn random_linear_map<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(dim, dim, |i, j| {
            let g: f64 = StandardNormal.sample(rng);
            0.5 * g + if i == j { 1.0 } else { 0.0 }
        });
        let sv = m.singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min > 0.2 && max / min < 8.0 {
            return m;
        }
    }
}

pub fn random_affine_map<R: Rng>(rng: &mut R, dim: usize) -> (Matrix, Vector) {
    let a = random_linear_map(rng, dim);
    let t = gaussian_vector(rng, dim);
    (a, t)
}

/// Point `c + s (y - c)` for the canonical interior point `c`, a random
/// boundary or vertex point `y`, and `s` uniform in `[0, reach)`.
pub fn random_interior_point<R: Rng>(rng: &mut R, body: &ConvexBody, reach: f64) -> Vector {
    let c = body.interior_point();
    let y = match body {
        ConvexBody::Polytope(p) => p.vertices()[rng.gen_range(0..p.vertices().len())].clone(),
        ConvexBody::Smooth(s) => s.support_grad(&random_direction(rng, s.dim())),
    };
    let s = rng.gen_range(0.0..reach);
    &c + (y - &c) * s
}
