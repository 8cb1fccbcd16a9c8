//! JSON description of bodies.

use serde::{Deserialize, Serialize};

use super::{ConvexBody, EvenPolynomial, Polytope, SmoothBody};
use crate::error::{GeomError, Result};
use crate::{Matrix, Vector};

/// ```json
/// {"type": "polytope", "vertices": [[1, 0], [0, 1], [-1, -1]]}
/// {"type": "ellipsoid", "Q": [[1, 0], [0, 4]]}
/// {"type": "perturbed_ball", "eps": 0.03, "dim": 3}
/// {"type": "ball", "radius": 2.0, "dim": 2}
/// ```
/// Smooth bodies accept an optional `"center"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Polytope {
        vertices: Vec<Vec<f64>>,
    },
    Ellipsoid {
        #[serde(rename = "Q")]
        q: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
    PerturbedBall {
        eps: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        harmonic: Option<EvenPolynomial>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
    Ball {
        radius: f64,
        #[serde(default = "default_dim")]
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
}

fn default_dim() -> usize {
    2
}

fn with_center(body: SmoothBody, center: &Option<Vec<f64>>) -> Result<SmoothBody> {
    match center {
        None => Ok(body),
        Some(c) if c.len() == body.dim() => Ok(body.translate(&Vector::from_column_slice(c))),
        Some(c) => Err(GeomError::DimensionMismatch {
            expected: body.dim(),
            found: c.len(),
        }),
    }
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<BodySpec> {
        serde_json::from_str(text).map_err(|e| GeomError::InvalidSpec(e.to_string()))
    }

    pub fn from_polytope(p: &Polytope) -> BodySpec {
        BodySpec::Polytope {
            vertices: p.vertices().iter().map(|v| v.iter().cloned().collect()).collect(),
        }
    }

    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Polytope { vertices } => {
                let pts: Vec<Vector> = vertices.iter().map(|v| Vector::from_column_slice(v)).collect();
                let dim = pts.first().map_or(0, |p| p.len());
                if !(2..=4).contains(&dim) {
                    return Err(GeomError::InvalidSpec(format!("polytope dimension {dim}")));
                }
                if pts.iter().any(|p| p.len() != dim) {
                    return Err(GeomError::InvalidSpec("vertices of mixed dimension".into()));
                }
                Ok(Polytope::from_points(&pts)?.into())
            }
            BodySpec::Ellipsoid { q, center } => {
                let n = q.len();
                if q.iter().any(|row| row.len() != n) {
                    return Err(GeomError::InvalidSpec("Q must be square".into()));
                }
                let m = Matrix::from_fn(n, n, |i, j| q[i][j]);
                Ok(with_center(SmoothBody::ellipsoid(&m)?, center)?.into())
            }
            BodySpec::PerturbedBall {
                eps,
                harmonic,
                dim,
                center,
            } => {
                let poly = match harmonic {
                    Some(p) => p.clone(),
                    None => EvenPolynomial::default_for(dim.unwrap_or(2)),
                };
                let d = dim.unwrap_or_else(|| poly.dim());
                Ok(with_center(SmoothBody::perturbed_ball(d, *eps, poly)?, center)?.into())
            }
            BodySpec::Ball { radius, dim, center } => Ok(with_center(SmoothBody::ball(*dim, *radius)?, center)?.into()),
        }
    }
}
