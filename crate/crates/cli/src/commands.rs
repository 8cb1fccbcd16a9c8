//! One function per subcommand.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use htgeom::convex::{BodySpec, SmoothKind};
use htgeom::equiaffine::{
    blaschke_normal, collinearity_residual, condition_residuals, dual_centroid, l_matrix, l_value, xi_determinant,
    TangentFrame,
};
use htgeom::ht::{
    eps, ht_area as ht_area_of, ht_area_dual, ht_area_dual_polar_route, isoperimetric_bound, isoperimetric_ratio,
    symplectic_area_2d,
};
use htgeom::random::{random_direction, random_linear_map};
use htgeom::santalo::{
    inradius_proxy, nonunique_example, objective, santalo_point, strcvx_defect, Functional, SolveOptions, SolveStatus,
};
use htgeom::{ConvexBody, Resolution, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{load_body, parse_vector, tolerances, CliError, CliResult};
use crate::report::{Check, Comparison, Report};
use crate::suites::{self, SuiteConfig, SUITES};
use crate::{Common, Outcome};

const CLASSICAL: &str = "euclid-classical";

fn echo(name: &str, common: &Common, res: &Resolution, tols: &BTreeMap<String, f64>, extra: Value) -> Value {
    let mut v = json!({
        "name": name,
        "resolution": res,
        "seed": common.seed,
        "tolerances": tols,
    });
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    v
}

fn coords(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

fn finish(report: Report) -> CliResult<Outcome> {
    Ok(Outcome {
        report,
        solver_failed: false,
    })
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<f64>]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| CliError::input(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|x| format!("{x:e}"))).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn santalo(k: &str, b: &str, csv: Option<&Path>, common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(
        &[("solver", 1e-9), ("flat", 1e-12), ("flat_length", 1e-3), ("recompute", 1e-10)],
        &common.tol,
    )?;
    let kb = load_body("k", k)?;
    let bb = if b == CLASSICAL { None } else { Some(load_body("b", b)?) };
    let functional = match &bb {
        Some(lb) => Functional::HolmesThompson(&lb.body),
        None => Functional::Classical,
    };
    if let Some(lb) = &bb {
        if lb.body.dim() != kb.body.dim() {
            return Err(CliError::input("--k and --b have different dimensions"));
        }
    }
    let opts = SolveOptions {
        tol: tols["solver"],
        resolution: res,
        flat_threshold: tols["flat"],
        flat_length: tols["flat_length"],
        ..SolveOptions::default()
    };
    let r = santalo_point(&kb.body, functional, &opts)?;
    let recomputed = functional.value(&r.point, &kb.body, &res)?;
    let mut checks = vec![
        Check::new("santalo.value_recomputation", recomputed, r.value, Comparison::Abs, tols["recompute"]),
        Check::positive("santalo.interior_margin", kb.body.margin(&r.point)),
    ];
    let smooth_path = bb.as_ref().is_none_or(|lb| lb.body.as_smooth().is_some());
    if smooth_path && r.status == SolveStatus::Converged {
        checks.push(Check::at_most("santalo.gradient_norm", r.gradient_norm, tols["solver"]));
    }
    if let Some(path) = csv {
        let n = r.point.len();
        let mut header: Vec<String> = vec!["step".into()];
        header.extend((0..n).map(|i| format!("x{i}")));
        header.push("value".into());
        let rows: Vec<Vec<f64>> = r
            .trace
            .iter()
            .enumerate()
            .map(|(i, (x, v))| {
                let mut row = vec![i as f64];
                row.extend(x.iter());
                row.push(*v);
                row
            })
            .collect();
        write_csv(path, &header, &rows)?;
    }
    let command = echo(
        "santalo",
        common,
        &res,
        &tols,
        json!({"k": kb.echo(), "b": bb.as_ref().map_or(json!(CLASSICAL), |lb| lb.echo())}),
    );
    let result = json!({
        "point": coords(&r.point),
        "value": r.value,
        "gradient_norm": r.gradient_norm,
        "iterations": r.iterations,
        "status": r.status,
        "segment": r.segment.as_ref().map(|(a, c)| [coords(a), coords(c)]),
    });
    Ok(Outcome {
        report: Report::new(command, checks, result),
        solver_failed: r.status == SolveStatus::MaxIter,
    })
}

pub fn first_variation(k: &str, b: &str, directions: &[String], common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(&[("first_variation", 1e-2), ("fd_step", 1e-4)], &common.tol)?;
    let kb = load_body("k", k)?;
    let bb = load_body("b", b)?;
    let bs = bb
        .body
        .as_smooth()
        .ok_or_else(|| CliError::input("--b must be a smooth body"))?;
    let n = kb.body.dim();
    if bs.dim() != n {
        return Err(CliError::input("--k and --b have different dimensions"));
    }
    let dirs: Vec<Vector> = if directions.is_empty() {
        (0..n)
            .flat_map(|i| {
                [1.0, -1.0].map(|s| {
                    let mut v = Vector::zeros(n);
                    v[i] = s;
                    v
                })
            })
            .collect()
    } else {
        directions
            .iter()
            .map(|d| {
                let v = parse_vector(d)?;
                if v.len() != n {
                    return Err(CliError::input(format!("--v {d}: expected {n} coordinates")));
                }
                Ok(Vector::from_vec(v))
            })
            .collect::<CliResult<_>>()?
    };
    let c = dual_centroid(&kb.body, bs, &res)? * ((n as f64 + 1.0) / eps(n - 1));
    let base = ht_area_dual(&kb.body, &bb.body, &res)?;
    let h = tols["fd_step"] * inradius_proxy(&kb.body);
    let derivative = |v: &Vector| -> CliResult<f64> {
        let f = |s: f64| ht_area_dual(&kb.body.translate(&(v * -s)), &bb.body, &res);
        Ok((f(h)? - f(-h)?) / (2.0 * h))
    };
    // Scale for relative errors: directional derivatives near zero are compared
    // against the size of the full gradient, and a symmetric body against the
    // objective itself.
    let grad_fd = Vector::from_iterator(
        n,
        (0..n)
            .map(|i| {
                let mut e = Vector::zeros(n);
                e[i] = 1.0;
                derivative(&e)
            })
            .collect::<CliResult<Vec<f64>>>()?,
    );
    let floor = (0.1 * grad_fd.norm()).max(1e-6 * base / kb.body.diameter());
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for (i, v) in dirs.iter().enumerate() {
        let fd = derivative(v)?;
        let formula = c.dot(v);
        let err = (formula - fd).abs() / fd.abs().max(floor);
        checks.push(Check::at_most(format!("first_variation.v{i}.rel_error"), err, tols["first_variation"]));
        rows.push(json!({"v": coords(v), "finite_difference": fd, "centroid_formula": formula, "rel_error": err}));
    }
    let command = echo(
        "first-variation-check",
        common,
        &res,
        &tols,
        json!({"k": kb.echo(), "b": bb.echo()}),
    );
    let result = json!({"dual_centroid_gradient": coords(&c), "objective": base, "directions": rows});
    finish(Report::new(command, checks, result))
}

pub fn checks(count: usize, names: &[String], common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    if count == 0 {
        return Err(CliError::input("--count must be positive"));
    }
    for s in names {
        if !SUITES.contains(&s.as_str()) {
            return Err(CliError::input(format!("unknown suite {s:?}; known: {}", SUITES.join(", "))));
        }
    }
    let selected: Vec<&str> = SUITES
        .iter()
        .copied()
        .filter(|s| names.is_empty() || names.iter().any(|n| n == s))
        .collect();
    let cfg = SuiteConfig {
        seed: common.seed,
        count,
        res,
    };
    let tols = tolerances(&[], &common.tol)?;
    let mut all = Vec::new();
    for s in &selected {
        all.extend(suites::run(s, &cfg)?);
    }
    let command = echo("checks", common, &res, &tols, json!({"count": count, "suites": selected}));
    let result = json!({"isoperimetric_bound_n2": isoperimetric_bound(2)});
    finish(Report::new(command, all, result))
}

pub fn nonunique(eps0: f64, csv: Option<&Path>, common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(&[("flatness", 1e-10), ("certificate", 1e-12)], &common.tol)?;
    if !(eps0 > 0.0 && eps0 <= 0.5) {
        return Err(CliError::input("--eps0 must lie in (0, 0.5]"));
    }
    let ex = nonunique_example(eps0);
    let k: ConvexBody = ex.k.clone().into();
    let b: ConvexBody = ex.b.clone().into();
    let samples: Vec<(Vector, f64)> = (0..=10)
        .map(|i| {
            let t = i as f64 / 10.0;
            let x = &ex.x1 * (1.0 - t) + &ex.x2 * t;
            let v = objective(&x, &k, &b, &res)?;
            Ok((x, v))
        })
        .collect::<CliResult<_>>()?;
    let max = samples.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let min = samples.iter().map(|s| s.1).fold(f64::MAX, f64::min);
    let mut checks = vec![Check::at_most("nonunique.sample_spread", max - min, tols["flatness"])];
    let mut certificates = Vec::new();
    for (i, h) in ex.b_directions().iter().enumerate() {
        let d = strcvx_defect(h, &ex.x1, &ex.x2, &k, &res)?;
        checks.push(Check::new(format!("nonunique.facet_direction{i}.defect"), d, 0.0, Comparison::Abs, tols["certificate"]));
        certificates.push(json!({"normal": coords(h.normal()), "defect": d}));
    }
    let solved = santalo_point(
        &k,
        Functional::HolmesThompson(&b),
        &SolveOptions {
            resolution: res,
            ..SolveOptions::default()
        },
    )?;
    if let Some(path) = csv {
        let header = ["t", "x", "y", "value"].map(String::from);
        let rows: Vec<Vec<f64>> = samples
            .iter()
            .enumerate()
            .map(|(i, (x, v))| vec![i as f64 / 10.0, x[0], x[1], *v])
            .collect();
        write_csv(path, &header, &rows)?;
    }
    let command = echo("nonunique-demo", common, &res, &tols, json!({"eps0": eps0}));
    let result = json!({
        "k": BodySpec::from_polytope(&ex.k),
        "b": BodySpec::from_polytope(&ex.b),
        "segment": [coords(&ex.x1), coords(&ex.x2)],
        "segment_length": (&ex.x2 - &ex.x1).norm(),
        "samples": samples.iter().map(|(x, v)| json!({"x": coords(x), "value": v})).collect::<Vec<_>>(),
        "certificates": certificates,
        "solver": {
            "status": solved.status,
            "point": coords(&solved.point),
            "value": solved.value,
            "segment": solved.segment.as_ref().map(|(a, c)| [coords(a), coords(c)]),
        },
    });
    finish(Report::new(command, checks, result))
}

pub fn ht_area(k: &str, b: &str, common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(
        &[("duality_polytope", 1e-9), ("duality_smooth", 1e-5), ("crofton", 1e-3)],
        &common.tol,
    )?;
    let kb = load_body("k", k)?;
    let bb = load_body("b", b)?;
    let area = ht_area_of(&kb.body, &bb.body, &res)?;
    let mut checks = Vec::new();
    let mut result = json!({"ht_area": area});
    // A_B(∂K) = A_{K°}(∂B°), evaluated on ∂B°; needs the origin inside K too.
    if let Ok(polar) = ht_area_dual_polar_route(&bb.body, &kb.body, &res) {
        let both_polytopes = kb.body.as_polytope().is_some() && bb.body.as_polytope().is_some();
        let tol = if both_polytopes { tols["duality_polytope"] } else { tols["duality_smooth"] };
        checks.push(Check::new("ht_area.duality", polar, area, Comparison::Rel, tol));
        result["polar_route"] = json!(polar);
    }
    if kb.body.dim() == 2 {
        let s = symplectic_area_2d(&kb.body, &bb.body, &res)?;
        checks.push(Check::new("ht_area.symplectic_2d", s, area, Comparison::Rel, tols["crofton"]));
        result["symplectic_2d"] = json!(s);
    }
    let command = echo("ht-area", common, &res, &tols, json!({"k": kb.echo(), "b": bb.echo()}));
    finish(Report::new(command, checks, result))
}

pub fn isoperimetric(k: &str, b: &str, common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(&[("isoperimetric", 1e-9)], &common.tol)?;
    let kb = load_body("k", k)?;
    let bb = load_body("b", b)?;
    let (ratio, bound) = isoperimetric_ratio(&kb.body, &bb.body, &res)?;
    let mut checks = vec![Check::new("isoperimetric.ratio", ratio, bound, Comparison::AtLeast, tols["isoperimetric"])];
    if kb.body.dim() == 2 {
        checks.push(Check::new("isoperimetric.bound_n2", bound, 32.0 / PI, Comparison::Abs, 1e-12));
    }
    let command = echo("isoperimetric-check", common, &res, &tols, json!({"k": kb.echo(), "b": bb.echo()}));
    finish(Report::new(command, checks, json!({"ratio": ratio, "bound": bound})))
}

pub fn equiaffine(b: &str, nodes: usize, common: &Common) -> CliResult<Outcome> {
    let res = common.res()?;
    let tols = tolerances(
        &[("conditions", 1e-6), ("l_identity", 1e-6), ("collinearity", 1e-6), ("scaling", 1e-10)],
        &common.tol,
    )?;
    let bb = load_body("b", b)?;
    let body = bb
        .body
        .as_smooth()
        .ok_or_else(|| CliError::input("--b must be a smooth body"))?;
    let n = body.dim();
    let ellipsoid = matches!(body.kind(), SmoothKind::Ellipsoid { .. });
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for i in 0..nodes {
        let u = random_direction(&mut rng, n);
        let frame = TangentFrame::from_coefficients(body, &u, &random_linear_map(&mut rng, n - 1))?;
        let data = blaschke_normal(body, &u)?;
        let (tangency, volume) = condition_residuals(body, &frame)?;
        let l = l_matrix(body, &frame)?.determinant();
        let det = xi_determinant(body, &frame)?.powi(n as i32 + 1);
        let lambdas: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.3..3.0)).collect();
        let factor: f64 = lambdas.iter().map(|x| x.powi(n as i32 + 1)).product();
        let scaled = l_value(body, &frame.scaled(&lambdas))?;
        checks.push(Check::at_most(format!("equiaffine.node{i}.tangency"), tangency, tols["conditions"]));
        checks.push(Check::at_most(format!("equiaffine.node{i}.volume"), volume, tols["conditions"]));
        checks.push(Check::new(format!("equiaffine.node{i}.l_identity"), l, det, Comparison::Rel, tols["l_identity"]));
        checks.push(Check::new(format!("equiaffine.node{i}.scaling"), scaled, factor * l, Comparison::Rel, tols["scaling"]));
        if ellipsoid {
            let c = collinearity_residual(&data, body.center());
            checks.push(Check::at_most(format!("equiaffine.node{i}.collinearity"), c, tols["collinearity"]));
        }
        rows.push(json!({"normal": coords(&u), "x": coords(&data.x), "xi": coords(&data.xi), "l": l}));
    }
    let command = echo(
        "equiaffine-check",
        common,
        &res,
        &tols,
        json!({"b": bb.echo(), "nodes": nodes}),
    );
    finish(Report::new(command, checks, json!({"nodes": rows})))
}
