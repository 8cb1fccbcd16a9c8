//! Derivative-free and gradient-based minimization on an open convex domain.
//!
//! Objectives return `None` outside the domain; both methods treat such
//! points as infinitely bad.

use crate::Vector;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub x: Vector,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<(Vector, f64)>,
}

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iter: usize,
    /// Stop when the simplex diameter falls below this.
    pub xtol: f64,
    pub initial_step: f64,
    pub restarts: usize,
}

fn eval(f: &dyn Fn(&Vector) -> Option<f64>, x: &Vector) -> f64 {
    f(x).unwrap_or(f64::INFINITY)
}

fn nm_once(f: &dyn Fn(&Vector) -> Option<f64>, x0: &Vector, step: f64, xtol: f64, budget: usize, trace: &mut Vec<(Vector, f64)>) -> (Vector, f64, usize, bool) {
    let n = x0.len();
    let mut simplex: Vec<(Vector, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.clone(), eval(f, x0)));
    for i in 0..n {
        // Shrink the initial edge until the vertex is feasible.
        let mut s = step;
        loop {
            let mut x = x0.clone();
            x[i] += s;
            let fx = eval(f, &x);
            if fx.is_finite() || s < 1e-12 * step {
                simplex.push((x, fx));
                break;
            }
            s *= -0.5;
        }
    }
    let mut it = 0;
    let diameter = |s: &[(Vector, f64)]| {
        s[1..].iter().map(|(x, _)| (x - &s[0].0).norm()).fold(0.0, f64::max)
    };
    while it < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(simplex[0].clone());
        if diameter(&simplex) <= xtol {
            return (simplex[0].0.clone(), simplex[0].1, it, true);
        }
        it += 1;
        let mut centroid = Vector::zeros(n);
        for (x, _) in &simplex[..n] {
            centroid += x;
        }
        centroid /= n as f64;
        let worst = simplex[n].clone();
        let at = |t: f64| &centroid + (&worst.0 - &centroid) * t;
        let xr = at(-1.0);
        let fr = eval(f, &xr);
        if fr < simplex[0].1 {
            let xe = at(-2.0);
            let fe = eval(f, &xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let x = at(-0.5);
            let fx = eval(f, &x);
            (x, fx)
        } else {
            let x = at(0.5);
            let fx = eval(f, &x);
            (x, fx)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for v in simplex.iter_mut().skip(1) {
            v.0 = &best + (&v.0 - &best) * 0.5;
            v.1 = eval(f, &v.0);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].0.clone(), simplex[0].1, it, false)
}

/// Nelder-Mead with restarts from the best point found.
pub fn nelder_mead(f: &dyn Fn(&Vector) -> Option<f64>, x0: &Vector, opts: &NelderMeadOptions) -> Outcome {
    let mut trace = Vec::new();
    let mut x = x0.clone();
    let mut fx = eval(f, &x);
    let mut total = 0;
    let mut converged = false;
    let mut step = opts.initial_step;
    for _ in 0..=opts.restarts {
        let (y, fy, it, ok) = nm_once(f, &x, step, opts.xtol, opts.max_iter - total.min(opts.max_iter), &mut trace);
        total += it;
        let moved = (&y - &x).norm();
        let improved = fy < fx;
        if improved {
            x = y;
            fx = fy;
        }
        converged = ok;
        if !ok || total >= opts.max_iter {
            converged = ok && total < opts.max_iter;
            break;
        }
        if moved <= opts.xtol && !improved {
            break;
        }
        step = (10.0 * moved).clamp(10.0 * opts.xtol, opts.initial_step);
    }
    Outcome {
        x,
        fx,
        iterations: total,
        converged,
        trace,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DescentOptions {
    pub max_iter: usize,
    /// Stop when the gradient norm falls below this.
    pub gtol: f64,
    /// Length of the first trial step.
    pub initial_step: f64,
}

/// Gradient descent with Barzilai-Borwein trial steps and Armijo backtracking.
/// `converged` reports whether the gradient tolerance was met.
pub fn gradient_descent(
    f: &dyn Fn(&Vector) -> Option<f64>,
    grad: &dyn Fn(&Vector) -> Option<Vector>,
    x0: &Vector,
    opts: &DescentOptions,
) -> Outcome {
    let mut trace = Vec::new();
    let mut x = x0.clone();
    let mut fx = eval(f, &x);
    let mut g = match grad(&x) {
        Some(g) => g,
        None => {
            return Outcome {
                x,
                fx,
                iterations: 0,
                converged: false,
                trace,
            }
        }
    };
    let mut alpha = opts.initial_step / g.norm().max(1e-300);
    let mut it = 0;
    loop {
        trace.push((x.clone(), fx));
        if g.norm() <= opts.gtol {
            return Outcome {
                x,
                fx,
                iterations: it,
                converged: true,
                trace,
            };
        }
        if it >= opts.max_iter {
            break;
        }
        it += 1;
        let gg = g.norm_squared();
        // Below this, value differences are roundoff and the gradient decides.
        let noise = 64.0 * f64::EPSILON * fx.abs().max(1.0);
        let mut a = alpha;
        let mut accepted = None;
        for _ in 0..80 {
            let y = &x - &g * a;
            let fy = eval(f, &y);
            if fy <= fx - 1e-4 * a * gg {
                accepted = grad(&y).map(|gy| (y, fy, gy));
                break;
            }
            if (fy - fx).abs() <= noise {
                if let Some(gy) = grad(&y).filter(|gy| gy.norm() < g.norm()) {
                    accepted = Some((y, fy, gy));
                    break;
                }
            }
            a *= 0.5;
        }
        let Some((y, fy, gy)) = accepted else { break };
        let s = &y - &x;
        let dg = &gy - &g;
        let sy = s.dot(&dg);
        alpha = if sy > 0.0 { s.norm_squared() / sy } else { 2.0 * a };
        x = y;
        fx = fy;
        g = gy;
    }
    Outcome {
        x,
        fx,
        iterations: it,
        converged: false,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn quad(x: &Vector) -> Option<f64> {
        (x.norm() < 10.0).then(|| (x[0] - 1.0).powi(2) + 5.0 * (x[1] + 0.5).powi(2) + x[0] * x[1])
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let opts = NelderMeadOptions {
            max_iter: 5000,
            xtol: 1e-11,
            initial_step: 1.0,
            restarts: 3,
        };
        let out = nelder_mead(&quad, &vector(&[0.0, 0.0]), &opts);
        // minimum of (x-1)^2 + 5(y+0.5)^2 + xy
        let expect = vector(&[25.0 / 19.0, -12.0 / 19.0]);
        assert!(out.converged);
        assert!((out.x - expect).norm() < 1e-8);
    }

    #[test]
    fn nelder_mead_handles_kinks() {
        let f = |x: &Vector| Some((x[0] - 0.3).abs() + 2.0 * (x[1] + 0.1).abs() + 0.1 * x[0] * x[0]);
        let opts = NelderMeadOptions {
            max_iter: 5000,
            xtol: 1e-12,
            initial_step: 0.5,
            restarts: 5,
        };
        let out = nelder_mead(&f, &vector(&[0.0, 0.0]), &opts);
        assert!((&out.x - vector(&[0.3, -0.1])).norm() < 1e-9, "{}", out.x);
    }

    #[test]
    fn descent_on_quadratic() {
        let g = |x: &Vector| Some(vector(&[2.0 * (x[0] - 1.0) + x[1], 10.0 * (x[1] + 0.5) + x[0]]));
        let opts = DescentOptions {
            max_iter: 1000,
            gtol: 1e-10,
            initial_step: 0.1,
        };
        let out = gradient_descent(&quad, &g, &vector(&[0.0, 0.0]), &opts);
        assert!(out.converged);
        assert!((out.x - vector(&[25.0 / 19.0, -12.0 / 19.0])).norm() < 1e-9);
    }
}
