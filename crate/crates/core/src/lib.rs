//! Holmes-Thompson areas, polar bodies and Santalo points of convex bodies.
//!
//! Bodies live in `R^n` (n = 2, 3) with the standard inner product, so the dual
//! body of `A` is its polar `A° = {y : <x, y> <= 1 for all x in A}`.

pub mod convex;
pub mod equiaffine;
pub mod error;
pub mod ht;
pub mod linalg;
pub mod optimize;
pub mod quadrature;
pub mod random;
pub mod santalo;

pub use convex::{
    ConvexBody, LinearHyperplane, Polytope, SmoothBody, SmoothKind, SurfaceAreaMeasure,
};
pub use error::{GeomError, Result};
pub use quadrature::Resolution;

pub type Vector = nalgebra::DVector<f64>;
pub type Matrix = nalgebra::DMatrix<f64>;

/// Global tolerance for geometric predicates, relative to the body's scale.
pub const TOL: f64 = 1e-9;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
