//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the lines always reach stdout;
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use htgeom::equiaffine::{
    blaschke_normal, collinearity_residual, condition_residuals, dual_centroid, l_matrix, l_value, xi_determinant,
    TangentFrame,
};
use htgeom::ht::{
    eps, ht_area, ht_area_dual, ht_area_dual_polar_route, ht_volume, isoperimetric_bound, isoperimetric_ratio,
    symplectic_area_2d,
};
use htgeom::linalg::vector;
use htgeom::random::{random_affine_map, random_direction, random_interior_point, random_linear_map, random_polytope};
use htgeom::santalo::{
    classical_gradient, classical_objective, midpoint_defect, nonunique_example, objective, properness_probe,
    santalo_point, strcvx_defect, Functional, SolveOptions, SolveStatus,
};
use htgeom::{ConvexBody, Matrix, Polytope, Resolution, SmoothBody, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn disc() -> ConvexBody {
    SmoothBody::ball(2, 1.0).unwrap().into()
}

fn ball3() -> ConvexBody {
    SmoothBody::ball(3, 1.0).unwrap().into()
}

fn ellipse() -> ConvexBody {
    SmoothBody::ellipsoid(&Matrix::from_diagonal(&vector(&[1.0, 2.0]))).unwrap().into()
}

fn perturbed(dim: usize) -> ConvexBody {
    SmoothBody::perturbed_ball(dim, 0.03, htgeom::convex::EvenPolynomial::default_for(dim))
        .unwrap()
        .into()
}

fn square() -> ConvexBody {
    Polytope::cube(2, 1.0).into()
}

/// `max` that propagates NaN, so a NaN residual can never pass a check.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn nan_min(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Area of the polar of `{y : <a_i, y> <= b_i}` about `x`, from the polar
/// vertices `a_i / (b_i - <a_i, x>)` taken in angular order.
fn polygon_polar_area(normals: &[[f64; 2]], offsets: &[f64], x: [f64; 2]) -> f64 {
    let mut pts: Vec<(f64, f64)> = normals
        .iter()
        .zip(offsets)
        .map(|(a, b)| {
            let s = b - a[0] * x[0] - a[1] * x[1];
            (a[0] / s, a[1] / s)
        })
        .collect();
    pts.sort_by(|p, q| p.1.atan2(p.0).partial_cmp(&q.1.atan2(q.0)).unwrap());
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            p.0 * q.1 - p.1 * q.0
        })
        .sum::<f64>()
        / 2.0
}

fn anchors() -> Outcome {
    let res = Resolution::default();
    let a = ht_area(&disc(), &disc(), &res).unwrap();
    let s = ht_area(&square(), &square(), &res).unwrap();
    let v = ht_volume(&disc(), &disc(), &res).unwrap();
    let (ea, es, ev) = ((a - 2.0 * PI).abs(), (s - 8.0).abs(), (v - PI).abs());
    Outcome {
        pass: ea <= 1e-6 && es <= 1e-9 && ev <= 1e-12,
        detail: format!("|A(disc)-2pi|={ea:.1e} |A(square)-8|={es:.1e} |vol(disc)-pi|={ev:.1e}"),
    }
}

fn duality() -> Outcome {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_poly: f64 = 0.0;
    for (dim, count) in [(2, 50), (3, 20)] {
        for _ in 0..count {
            let (nk, nb) = (rng.gen_range(dim + 2..12), rng.gen_range(dim + 2..12));
            let k: ConvexBody = random_polytope(&mut rng, dim, nk).into();
            let b: ConvexBody = random_polytope(&mut rng, dim, nb).into();
            let a = ht_area_dual(&k, &b, &res).unwrap();
            let p = ht_area_dual_polar_route(&k, &b, &res).unwrap();
            worst_poly = nan_max(worst_poly, rel(p, a));
        }
    }
    let mut worst_mixed: f64 = 0.0;
    for dim in [2, 3] {
        let (a, t) = random_affine_map(&mut rng, dim);
        let smooth: Vec<ConvexBody> = vec![
            SmoothBody::ball(dim, 1.0).unwrap().into(),
            SmoothBody::ellipsoid(&(&a * a.transpose())).unwrap().into(),
            perturbed(dim),
            perturbed(dim).affine_image(&a, &(t * 0.05)).unwrap(),
        ];
        for s in &smooth {
            for _ in 0..3 {
                let p: ConvexBody = random_polytope(&mut rng, dim, 8).into();
                for (k, b) in [(s, &p), (&p, s)] {
                    let x = ht_area_dual(k, b, &res).unwrap();
                    let y = ht_area_dual_polar_route(k, b, &res);
                    // The polar route needs the polar of a smooth K, available for centered ellipsoids.
                    if let Ok(y) = y {
                        worst_mixed = nan_max(worst_mixed, rel(y, x));
                    }
                }
            }
        }
    }
    Outcome {
        pass: worst_poly <= 1e-9 && worst_mixed <= 1e-5,
        detail: format!("polytope pairs max rel {worst_poly:.1e}, mixed pairs max rel {worst_mixed:.1e}"),
    }
}

fn crofton() -> Outcome {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_pp: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let (a, _) = random_affine_map(&mut rng, 2);
        let p1: ConvexBody = random_polytope(&mut rng, 2, 7).into();
        let p2: ConvexBody = random_polytope(&mut rng, 2, 7).into();
        let s = ht_area(&p1, &p2, &res).unwrap();
        worst_pp = nan_max(worst_pp, rel(symplectic_area_2d(&p1, &p2, &res).unwrap(), s));
        let smooth: ConvexBody = match i % 3 {
            0 => disc().affine_image(&a, &Vector::zeros(2)).unwrap(),
            1 => perturbed(2).affine_image(&a, &Vector::zeros(2)).unwrap(),
            _ => ellipse(),
        };
        for (k, b) in [(&smooth, &p2), (&p1, &smooth), (&smooth, &smooth)] {
            let h = ht_area(k, b, &res).unwrap();
            worst = nan_max(worst, rel(symplectic_area_2d(k, b, &res).unwrap(), h));
        }
    }
    Outcome {
        pass: worst_pp <= 1e-9 && worst <= 1e-3,
        detail: format!("polygon pairs max rel {worst_pp:.1e}, smooth pairs max rel {worst:.1e}"),
    }
}

fn classical_derivative() -> Outcome {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for dim in [2, 3] {
        for _ in 0..20 {
            let k: ConvexBody = random_polytope(&mut rng, dim, 9).into();
            let x = random_interior_point(&mut rng, &k, 0.6);
            let v = random_direction(&mut rng, dim);
            let g = classical_gradient(&x, &k, &res).unwrap().dot(&v);
            let h = 1e-5;
            let f = |t: f64| classical_objective(&(&x + &v * t), &k, &res).unwrap();
            let fd = (f(h) - f(-h)) / (2.0 * h);
            worst = nan_max(worst, (g - fd).abs() / fd.abs().max(1e-3));
        }
    }
    let tri: ConvexBody = Polytope::from_points(&[vector(&[0.0, 0.0]), vector(&[1.0, 0.0]), vector(&[0.0, 1.0])])
        .unwrap()
        .into();
    let r = santalo_point(&tri, Functional::Classical, &SolveOptions::default()).unwrap();
    // Grid oracle: zooming brute-force search on the independently computed polar area.
    let normals = [[0.0, -1.0], [-1.0, 0.0], [1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]];
    let offsets = [0.0, 0.0, 1.0 / 2f64.sqrt()];
    let (mut c, mut w) = ([0.3, 0.3], 0.25);
    for _ in 0..12 {
        let mut best = (f64::INFINITY, c);
        for i in -10..=10 {
            for j in -10..=10 {
                let p = [c[0] + w * i as f64 / 10.0, c[1] + w * j as f64 / 10.0];
                if p[0] <= 0.0 || p[1] <= 0.0 || p[0] + p[1] >= 1.0 {
                    continue;
                }
                let a = polygon_polar_area(&normals, &offsets, p);
                if a < best.0 {
                    best = (a, p);
                }
            }
        }
        c = best.1;
        w *= 0.3;
    }
    let err = (&r.point - vector(&c)).norm();
    Outcome {
        pass: worst <= 1e-6 && err <= 1e-4,
        detail: format!(
            "derivative max rel {worst:.1e}; triangle point ({:.6}, {:.6}) vs grid ({:.6}, {:.6})",
            r.point[0], r.point[1], c[0], c[1]
        ),
    }
}

/// Relative error of the first-variation formula against the FD derivative
/// of `t -> A_{B*}(∂(K - t v)*)` for `v = ±e_i`.
fn first_variation_error(k: &ConvexBody, b: &ConvexBody, res: &Resolution) -> f64 {
    let n = k.dim();
    let bs = b.as_smooth().unwrap();
    let c = dual_centroid(k, bs, res).unwrap() * ((n as f64 + 1.0) / eps(n - 1));
    let h = 1e-4;
    let fd: Vec<f64> = (0..n)
        .map(|i| {
            let mut v = Vector::zeros(n);
            v[i] = h;
            let f = |s: f64| ht_area_dual(&k.translate(&(&v * -s)), b, res).unwrap();
            (f(1.0) - f(-1.0)) / (2.0 * h)
        })
        .collect();
    let scale = fd.iter().map(|d| d * d).sum::<f64>().sqrt() / 10.0;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let (a, d) = (sign * c[i], sign * fd[i]);
            worst = nan_max(worst, (a - d).abs() / d.abs().max(scale));
        }
    }
    worst
}

fn first_variation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sq: ConvexBody = Polytope::cube(2, 1.0).translate(&vector(&[-0.3, -0.1])).into();
    let cube: ConvexBody = Polytope::cube(3, 1.0).translate(&vector(&[-0.3, -0.1, 0.2])).into();
    let rp2: ConvexBody = random_polytope(&mut rng, 2, 7).into();
    let rp3: ConvexBody = random_polytope(&mut rng, 3, 9).into();
    let mut cases: Vec<(&str, ConvexBody, ConvexBody)> = Vec::new();
    for (bn, b) in [("disc", disc()), ("ellipse", ellipse()), ("perturbed2", perturbed(2))] {
        cases.push((bn, sq.clone(), b.clone()));
        cases.push((bn, rp2.clone(), b));
    }
    for (bn, b) in [("ball3", ball3()), ("perturbed3", perturbed(3))] {
        cases.push((bn, cube.clone(), b.clone()));
        cases.push((bn, rp3.clone(), b));
    }
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (name, k, b) in &cases {
        let r0 = Resolution::default();
        let e0 = first_variation_error(k, b, &r0);
        let e1 = first_variation_error(k, b, &r0.doubled());
        worst = nan_max(worst, e0);
        let monotone = e1 <= e0.max(1e-6);
        if e0 > 1e-2 || !monotone {
            pass = false;
            notes.push(format!("{name}: {e0:.1e} -> {e1:.1e}"));
        }
    }
    Outcome {
        pass,
        detail: format!("{} cases, max rel {worst:.1e} {}", cases.len(), notes.join(" ")),
    }
}

fn equiaffine_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bodies: Vec<(SmoothBody, bool)> = Vec::new();
    for dim in [2, 3] {
        let a = random_linear_map(&mut rng, dim);
        bodies.push((SmoothBody::ball(dim, 1.0).unwrap(), true));
        bodies.push((SmoothBody::ellipsoid(&(&a * a.transpose())).unwrap(), true));
        bodies.push((perturbed(dim).as_smooth().unwrap().clone(), false));
    }
    let (mut cond, mut ldet, mut col, mut scal, mut sym): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (b, ellipsoid) in &bodies {
        let n = b.dim();
        for _ in 0..12 {
            let u = random_direction(&mut rng, n);
            let coeffs = random_linear_map(&mut rng, n - 1);
            let frame = TangentFrame::from_coefficients(b, &u, &coeffs).unwrap();
            let (t, v) = condition_residuals(b, &frame).unwrap();
            cond = nan_max(nan_max(cond, t), v);
            let l = l_matrix(b, &frame).unwrap();
            sym = nan_max(sym, (&l - l.transpose()).amax() / l.amax());
            let lv = l.determinant();
            let d = xi_determinant(b, &frame).unwrap();
            ldet = nan_max(ldet, rel(lv, d.powi(n as i32 + 1)));
            let lambdas: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.3..3.0)).collect();
            let factor: f64 = lambdas.iter().map(|l| l.powi(n as i32 + 1)).product();
            scal = nan_max(scal, rel(l_value(b, &frame.scaled(&lambdas)).unwrap(), factor * lv));
            if *ellipsoid {
                let data = blaschke_normal(b, &u).unwrap();
                col = nan_max(col, collinearity_residual(&data, b.center()));
            }
        }
    }
    Outcome {
        pass: cond <= 1e-6 && ldet <= 1e-6 && col <= 1e-6 && scal <= 1e-10 && sym <= 1e-10,
        detail: format!(
            "conditions {cond:.1e}, L vs det^(n+1) {ldet:.1e}, collinearity {col:.1e}, scaling {scal:.1e}, symmetry {sym:.1e}"
        ),
    }
}

fn convexity() -> Outcome {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut min_defect = f64::INFINITY;
    for i in 0..200 {
        let dim = if i % 4 == 3 { 3 } else { 2 };
        let k: ConvexBody = random_polytope(&mut rng, dim, 8).into();
        let b: ConvexBody = match i % 4 {
            0 => random_polytope(&mut rng, 2, 6).into(),
            1 => ellipse(),
            2 => perturbed(2),
            _ => random_polytope(&mut rng, 3, 8).into(),
        };
        let x1 = random_interior_point(&mut rng, &k, 0.9);
        let x2 = random_interior_point(&mut rng, &k, 0.9);
        min_defect = nan_min(min_defect, midpoint_defect(&x1, &x2, &k, &b, &res).unwrap());
    }
    let mut min_strict = f64::INFINITY;
    for i in 0..30 {
        let k: ConvexBody = random_polytope(&mut rng, 2, 8).into();
        let b = [disc(), ellipse(), perturbed(2)][i % 3].clone();
        let (x1, x2) = loop {
            let x1 = random_interior_point(&mut rng, &k, 0.8);
            let x2 = random_interior_point(&mut rng, &k, 0.8);
            if (&x1 - &x2).norm() >= 0.1 * k.diameter() {
                break (x1, x2);
            }
        };
        min_strict = nan_min(min_strict, midpoint_defect(&x1, &x2, &k, &b, &res).unwrap());
    }
    let mut min_kb = f64::INFINITY;
    let hexagon: ConvexBody = loop {
        let p = random_polytope(&mut rng, 2, 10);
        if p.vertices().len() == 6 {
            break p.into();
        }
    };
    for k in [square(), hexagon] {
        for _ in 0..20 {
            let x1 = random_interior_point(&mut rng, &k, 0.9);
            let x2 = random_interior_point(&mut rng, &k, 0.9);
            if (&x1 - &x2).norm() < 1e-3 * k.diameter() {
                continue;
            }
            min_kb = nan_min(min_kb, midpoint_defect(&x1, &x2, &k, &k, &res).unwrap());
        }
    }
    Outcome {
        pass: min_defect >= -1e-10 && min_strict >= 1e-6 && min_kb > 1e-12,
        detail: format!("min defect {min_defect:.1e}, C1 B separated {min_strict:.1e}, K = B polytope {min_kb:.1e}"),
    }
}

fn flat_spread(eps0: f64) -> (f64, f64, f64) {
    let res = Resolution::default();
    let ex = nonunique_example(eps0);
    let (k, b): (ConvexBody, ConvexBody) = (ex.k.clone().into(), ex.b.clone().into());
    let vals: Vec<f64> = (0..=10)
        .map(|i| {
            let t = i as f64 / 10.0;
            objective(&(&ex.x1 * (1.0 - t) + &ex.x2 * t), &k, &b, &res).unwrap()
        })
        .collect();
    let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
    let cert = ex
        .b_directions()
        .iter()
        .map(|h| strcvx_defect(h, &ex.x1, &ex.x2, &k, &res).unwrap().abs())
        .fold(0.0, f64::max);
    ((&ex.x2 - &ex.x1).norm(), spread, cert)
}

fn nonuniqueness() -> Outcome {
    let (len, spread, cert) = flat_spread(0.2);
    let (_, spread_small, cert_small) = flat_spread(0.05);
    let ex = nonunique_example(0.2);
    let b: ConvexBody = ex.b.clone().into();
    let r = santalo_point(&ex.k.clone().into(), Functional::HolmesThompson(&b), &SolveOptions::default()).unwrap();
    let solver_len = r.segment.as_ref().map(|(a, c)| (a - c).norm()).unwrap_or(0.0);
    Outcome {
        pass: len >= 0.4 - 1e-12
            && spread <= 1e-10
            && cert <= 1e-12
            && spread_small <= 1e-10
            && cert_small <= 1e-12
            && r.status == SolveStatus::FlatRegion
            && solver_len >= 0.4,
        detail: format!(
            "segment length {len:.2}, spread {spread:.1e}, certificate {cert:.1e}; eps0=0.05 spread {spread_small:.1e}; solver segment length {solver_len:.3}"
        ),
    }
}

fn isoperimetry() -> Outcome {
    let res = Resolution::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_margin = f64::INFINITY;
    for dim in [2, 3] {
        for i in 0..50 {
            let (a, _) = random_affine_map(&mut rng, dim);
            let k: ConvexBody = match i % 3 {
                0 => random_polytope(&mut rng, dim, 8).into(),
                1 => SmoothBody::ellipsoid(&(&a * a.transpose())).unwrap().into(),
                _ => random_polytope(&mut rng, dim, 5).into(),
            };
            let b: ConvexBody = match i % 4 {
                0 => SmoothBody::ball(dim, 1.0).unwrap().affine_image(&a, &Vector::zeros(dim)).unwrap().into(),
                1 => perturbed(dim),
                _ => random_polytope(&mut rng, dim, 10).into(),
            };
            let (ratio, bound) = isoperimetric_ratio(&k, &b, &res).unwrap();
            worst_margin = nan_min(worst_margin, ratio - bound);
        }
    }
    let b2 = isoperimetric_bound(2);
    Outcome {
        pass: worst_margin >= -1e-9 && (b2 - 32.0 / PI).abs() <= 1e-12,
        detail: format!("min ratio - bound {worst_margin:.3e}; n=2 bound {b2:.12} = 32/pi"),
    }
}

fn self_point(b: &ConvexBody) -> Vector {
    let mut opts = SolveOptions::default();
    opts.tol = 1e-10;
    santalo_point(b, Functional::HolmesThompson(b), &opts).unwrap().point
}

fn affine_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let tri: ConvexBody = Polytope::from_points(&[vector(&[0.0, 0.0]), vector(&[1.0, 0.0]), vector(&[0.0, 1.0])])
        .unwrap()
        .into();
    let bodies: Vec<ConvexBody> = vec![
        tri,
        random_polytope(&mut rng, 2, 5).into(),
        random_polytope(&mut rng, 2, 9).into(),
        random_polytope(&mut rng, 3, 7).into(),
        perturbed(2).translate(&vector(&[0.2, -0.1])),
    ];
    let mut worst: f64 = 0.0;
    for b in &bodies {
        let s = self_point(b);
        for _ in 0..20 {
            let (a, t) = random_affine_map(&mut rng, b.dim());
            let tb = b.affine_image(&a, &t).unwrap();
            let st = self_point(&tb);
            worst = nan_max(worst, (st - (&a * &s + &t)).norm() / tb.diameter());
        }
    }
    // Continuity: perturb the vertices of a random pentagon.
    let p = random_polytope(&mut rng, 2, 5);
    let s0 = self_point(&p.clone().into());
    let dirs: Vec<Vector> = p.vertices().iter().map(|_| random_direction(&mut rng, 2)).collect();
    let moves: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|d| {
            let pts: Vec<Vector> = p.vertices().iter().zip(&dirs).map(|(v, e)| v + e * *d).collect();
            let q: ConvexBody = Polytope::from_points(&pts).unwrap().into();
            (self_point(&q) - &s0).norm()
        })
        .collect();
    let decreasing = moves.windows(2).all(|w| w[1] < w[0]);
    Outcome {
        pass: worst <= 1e-6 && decreasing,
        detail: format!(
            "max |S(TB) - T S(B)| / diam {worst:.1e}; moves {:.1e} {:.1e} {:.1e}",
            moves[0], moves[1], moves[2]
        ),
    }
}

fn increasing_with_growth(samples: &[(f64, f64)], base: f64) -> bool {
    samples.windows(2).all(|w| w[1].1 > w[0].1) && samples.last().unwrap().1 >= 10.0 * base
}

fn properness() -> Outcome {
    let res = Resolution::default();
    let dists = [1e-1, 1e-2, 1e-3];
    let o = vector(&[0.0, 0.0]);
    let sq = square();
    let classical = properness_probe(&sq, Functional::Classical, &o, &vector(&[1.0, 0.0]), &dists, &res).unwrap();
    let c_ok = increasing_with_growth(&classical, 2.0);
    let diag = vector(&[1.0, 1.0]);
    let ht = properness_probe(&sq, Functional::HolmesThompson(&sq), &o, &diag, &dists, &res).unwrap();
    let h_ok = increasing_with_growth(&ht, 8.0);
    let d = disc();
    let e = ellipse();
    let smooth = properness_probe(&d, Functional::HolmesThompson(&e), &o, &vector(&[0.6, 0.8]), &dists, &res).unwrap();
    let base = objective(&o, &d, &e, &res).unwrap();
    let s_ok = increasing_with_growth(&smooth, base);
    let family: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|k| {
            let bk: ConvexBody = Polytope::cube(2, 1.0).translate(&vector(&[-(1.0 - 1.0 / k), 0.0])).into();
            bk.polar_volume(&res).unwrap()
        })
        .collect();
    let f_ok = family.windows(2).all(|w| w[1] > 5.0 * w[0]);
    Outcome {
        pass: c_ok && h_ok && s_ok && f_ok,
        detail: format!(
            "classical {:.1} -> {:.1}, HT square {:.1} -> {:.1}, HT disc/ellipse {:.1} -> {:.1}, |B_k°| = {:.1} {:.1} {:.1}",
            classical[0].1, classical[2].1, ht[0].1, ht[2].1, smooth[0].1, smooth[2].1, family[0], family[1], family[2]
        ),
    }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("1 analytic anchors", anchors, Duration::from_secs(1)),
        ("2 duality", duality, Duration::from_secs(30)),
        ("3 crofton cross-check", crofton, Duration::from_secs(30)),
        ("4 classical derivative", classical_derivative, Duration::from_secs(60)),
        ("5 first variation", first_variation, Duration::from_secs(300)),
        ("6 equiaffine suite", equiaffine_suite, Duration::from_secs(60)),
        ("7 convexity", convexity, Duration::from_secs(60)),
        ("8 non-uniqueness", nonuniqueness, Duration::from_secs(5)),
        ("9 isoperimetric inequality", isoperimetry, Duration::from_secs(60)),
        ("10 affine-invariant point", affine_invariance, Duration::from_secs(300)),
        ("11 properness", properness, Duration::from_secs(10)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
