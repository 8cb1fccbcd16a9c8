//! Randomized property suites behind `htgeom checks`.

use std::f64::consts::PI;

use htgeom::convex::EvenPolynomial;
use htgeom::equiaffine::{
    blaschke_normal, collinearity_residual, condition_residuals, l_matrix, l_value, xi_determinant, TangentFrame,
};
use htgeom::ht::{ht_area, ht_area_dual, ht_area_dual_polar_route, isoperimetric_bound, isoperimetric_ratio, symplectic_area_2d};
use htgeom::random::{random_affine_map, random_direction, random_interior_point, random_linear_map, random_polytope};
use htgeom::santalo::{midpoint_defect, properness_probe, santalo_point, Functional, SolveOptions};
use htgeom::{ConvexBody, Polytope, Resolution, SmoothBody, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::CliResult;
use crate::report::{Check, Comparison};

pub const SUITES: [&str; 7] = [
    "duality",
    "crofton-2d",
    "isoperimetric",
    "convexity",
    "equivariance",
    "properness",
    "equiaffine",
];

pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub res: Resolution,
}

impl SuiteConfig {
    /// Each suite has its own stream, so selecting suites does not change results.
    fn rng(&self, suite: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(suite as u64))
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// NaN-propagating max.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn least(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

fn perturbed(dim: usize) -> ConvexBody {
    SmoothBody::perturbed_ball(dim, 0.03, EvenPolynomial::default_for(dim))
        .expect("default perturbed ball is valid")
        .into()
}

fn random_smooth(rng: &mut ChaCha8Rng, dim: usize, i: usize) -> ConvexBody {
    let a = random_linear_map(rng, dim);
    match i % 3 {
        0 => SmoothBody::ellipsoid(&(&a * a.transpose())).expect("positive definite").into(),
        1 => perturbed(dim),
        _ => perturbed(dim).affine_image(&(a * 0.7), &Vector::zeros(dim)).expect("invertible"),
    }
}

pub fn run(name: &str, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let idx = SUITES.iter().position(|s| *s == name).expect("suite names are validated");
    let mut rng = cfg.rng(idx);
    match name {
        "duality" => duality(&mut rng, cfg),
        "crofton-2d" => crofton(&mut rng, cfg),
        "isoperimetric" => isoperimetric(&mut rng, cfg),
        "convexity" => convexity(&mut rng, cfg),
        "equivariance" => equivariance(&mut rng, cfg),
        "properness" => properness(cfg),
        _ => equiaffine(&mut rng, cfg),
    }
}

fn duality(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let mut poly: f64 = 0.0;
    for i in 0..cfg.count {
        let dim = if i % 3 == 2 { 3 } else { 2 };
        let k: ConvexBody = random_polytope(rng, dim, 8).into();
        let b: ConvexBody = random_polytope(rng, dim, 8).into();
        poly = worst(poly, rel(ht_area_dual_polar_route(&k, &b, res)?, ht_area_dual(&k, &b, res)?));
    }
    let mut mixed: f64 = 0.0;
    for i in 0..cfg.count.div_ceil(5) {
        let dim = 2 + i % 2;
        let s = random_smooth(rng, dim, i);
        let p: ConvexBody = random_polytope(rng, dim, 8).into();
        for (k, b) in [(&s, &p), (&p, &s)] {
            mixed = worst(mixed, rel(ht_area_dual_polar_route(k, b, res)?, ht_area_dual(k, b, res)?));
        }
    }
    Ok(vec![
        Check::at_most("duality.polytope_pairs.max_rel", poly, 1e-9),
        Check::at_most("duality.mixed_pairs.max_rel", mixed, 1e-5),
    ])
}

fn crofton(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let (mut poly, mut smooth): (f64, f64) = (0.0, 0.0);
    for i in 0..cfg.count.div_ceil(2) {
        let p1: ConvexBody = random_polytope(rng, 2, 7).into();
        let p2: ConvexBody = random_polytope(rng, 2, 7).into();
        poly = worst(poly, rel(symplectic_area_2d(&p1, &p2, res)?, ht_area(&p1, &p2, res)?));
        let s = random_smooth(rng, 2, i);
        for (k, b) in [(&s, &p2), (&p1, &s)] {
            smooth = worst(smooth, rel(symplectic_area_2d(k, b, res)?, ht_area(k, b, res)?));
        }
    }
    Ok(vec![
        Check::at_most("crofton-2d.polygon_pairs.max_rel", poly, 1e-9),
        Check::at_most("crofton-2d.smooth_pairs.max_rel", smooth, 1e-3),
    ])
}

fn isoperimetric(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let mut margin = f64::INFINITY;
    for i in 0..cfg.count {
        let dim = 2 + i % 2;
        let k: ConvexBody = random_polytope(rng, dim, 8).into();
        let b: ConvexBody = if i % 4 == 0 {
            random_smooth(rng, dim, i)
        } else {
            random_polytope(rng, dim, 9).into()
        };
        let (ratio, bound) = isoperimetric_ratio(&k, &b, res)?;
        margin = least(margin, ratio - bound);
    }
    Ok(vec![
        Check::new("isoperimetric.min_ratio_minus_bound", margin, 0.0, Comparison::AtLeast, 1e-9),
        Check::new("isoperimetric.bound_n2", isoperimetric_bound(2), 32.0 / PI, Comparison::Abs, 1e-12),
        Check::new(
            "isoperimetric.bound_n3",
            isoperimetric_bound(3),
            12f64.powi(3) / (6.0 * 4.0 * PI / 3.0),
            Comparison::Rel,
            1e-12,
        ),
    ])
}

fn convexity(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let mut min_defect = f64::INFINITY;
    for i in 0..cfg.count {
        let k: ConvexBody = random_polytope(rng, 2, 8).into();
        let b: ConvexBody = if i % 2 == 0 {
            random_polytope(rng, 2, 6).into()
        } else {
            random_smooth(rng, 2, i)
        };
        let x1 = random_interior_point(rng, &k, 0.9);
        let x2 = random_interior_point(rng, &k, 0.9);
        min_defect = least(min_defect, midpoint_defect(&x1, &x2, &k, &b, res)?);
    }
    let mut strict = f64::INFINITY;
    for i in 0..cfg.count.div_ceil(5) {
        let k: ConvexBody = random_polytope(rng, 2, 8).into();
        let b = random_smooth(rng, 2, i);
        let (x1, x2) = loop {
            let x1 = random_interior_point(rng, &k, 0.8);
            let x2 = random_interior_point(rng, &k, 0.8);
            if (&x1 - &x2).norm() >= 0.1 * k.diameter() {
                break (x1, x2);
            }
        };
        strict = least(strict, midpoint_defect(&x1, &x2, &k, &b, res)?);
    }
    Ok(vec![
        Check::new("convexity.min_midpoint_defect", min_defect, 0.0, Comparison::AtLeast, 1e-10),
        Check::new("convexity.smooth_b_separated.min_defect", strict, 1e-6, Comparison::AtLeast, 0.0),
    ])
}

fn equivariance(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let mut area: f64 = 0.0;
    for i in 0..cfg.count {
        let dim = 2 + i % 2;
        let k: ConvexBody = random_polytope(rng, dim, 8).into();
        let b: ConvexBody = random_polytope(rng, dim, 8).into();
        let t = random_linear_map(rng, dim);
        let z = Vector::zeros(dim);
        let moved = ht_area(&k.affine_image(&t, &z)?, &b.affine_image(&t, &z)?, res)?;
        area = worst(area, rel(moved, ht_area(&k, &b, res)?));
    }
    let mut point: f64 = 0.0;
    let opts = SolveOptions {
        tol: 1e-10,
        resolution: *res,
        ..SolveOptions::default()
    };
    for _ in 0..cfg.count.div_ceil(25) {
        let b: ConvexBody = random_polytope(rng, 2, 6).into();
        let s = santalo_point(&b, Functional::HolmesThompson(&b), &opts)?.point;
        for _ in 0..3 {
            let (a, t) = random_affine_map(rng, 2);
            let tb = b.affine_image(&a, &t)?;
            let st = santalo_point(&tb, Functional::HolmesThompson(&tb), &opts)?.point;
            point = worst(point, (st - (&a * &s + &t)).norm() / tb.diameter());
        }
    }
    Ok(vec![
        Check::at_most("equivariance.ht_area_linear.max_rel", area, 1e-9),
        Check::at_most("equivariance.santalo_point_affine.max_rel", point, 1e-6),
    ])
}

fn properness(cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let res = &cfg.res;
    let dists = [1e-1, 1e-2, 1e-3];
    let sq: ConvexBody = Polytope::cube(2, 1.0).into();
    let o = Vector::zeros(2);
    let mut checks = Vec::new();
    let rays = [
        ("classical_square", Functional::Classical, Vector::from_vec(vec![1.0, 0.0])),
        ("ht_square", Functional::HolmesThompson(&sq), Vector::from_vec(vec![1.0, 1.0])),
    ];
    for (name, f, d) in rays {
        let base = f.value(&o, &sq, res)?;
        let samples = properness_probe(&sq, f, &o, &d, &dists, res)?;
        let step = samples.windows(2).map(|w| w[1].1 - w[0].1).fold(f64::INFINITY, least);
        checks.push(Check::positive(format!("properness.{name}.min_increment"), step));
        checks.push(Check::new(
            format!("properness.{name}.growth"),
            samples[2].1 / base,
            10.0,
            Comparison::AtLeast,
            0.0,
        ));
    }
    let family: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|k| {
            let bk: ConvexBody = Polytope::cube(2, 1.0).translate(&Vector::from_vec(vec![-(1.0 - 1.0 / k), 0.0])).into();
            bk.polar_volume(res)
        })
        .collect::<Result<_, _>>()?;
    let growth = family.windows(2).map(|w| w[1] / w[0]).fold(f64::INFINITY, least);
    checks.push(Check::new("properness.shifted_square_polar.min_growth", growth, 5.0, Comparison::AtLeast, 0.0));
    Ok(checks)
}

fn equiaffine(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> CliResult<Vec<Check>> {
    let mut bodies: Vec<(SmoothBody, bool)> = Vec::new();
    for dim in [2, 3] {
        let a = random_linear_map(rng, dim);
        bodies.push((SmoothBody::ball(dim, 1.0)?, true));
        bodies.push((SmoothBody::ellipsoid(&(&a * a.transpose()))?, true));
        bodies.push((perturbed(dim).as_smooth().expect("smooth").clone(), false));
    }
    let per_body = cfg.count.div_ceil(10).max(1);
    let (mut cond, mut ldet, mut col, mut scal): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for (b, centered_ellipsoid) in &bodies {
        let n = b.dim();
        for _ in 0..per_body {
            let u = random_direction(rng, n);
            let frame = TangentFrame::from_coefficients(b, &u, &random_linear_map(rng, n - 1))?;
            let (t, v) = condition_residuals(b, &frame)?;
            cond = worst(worst(cond, t), v);
            let lv = l_matrix(b, &frame)?.determinant();
            ldet = worst(ldet, rel(lv, xi_determinant(b, &frame)?.powi(n as i32 + 1)));
            let lambdas: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.3..3.0)).collect();
            let factor: f64 = lambdas.iter().map(|l| l.powi(n as i32 + 1)).product();
            scal = worst(scal, rel(l_value(b, &frame.scaled(&lambdas))?, factor * lv));
            if *centered_ellipsoid {
                col = worst(col, collinearity_residual(&blaschke_normal(b, &u)?, b.center()));
            }
        }
    }
    Ok(vec![
        Check::at_most("equiaffine.condition_residual.max", cond, 1e-6),
        Check::at_most("equiaffine.l_vs_det.max_rel", ldet, 1e-6),
        Check::at_most("equiaffine.collinearity.max", col, 1e-6),
        Check::at_most("equiaffine.scaling_law.max_rel", scal, 1e-10),
    ])
}

