//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};

use crate::{Matrix, Vector};

/// Determinant of the matrix whose columns are `cols`.
pub fn det_columns(cols: &[&Vector]) -> f64 {
    let n = cols.len();
    let m = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    m.determinant()
}

/// Orthonormal basis of the orthogonal complement of `normal`, oriented so that
/// `det(normal, e_1, ..., e_{n-1}) > 0`. Deterministic in `normal`.
pub fn orthonormal_complement(normal: &Vector) -> Vec<Vector> {
    let n = normal.len();
    let u = normal.normalize();
    match n {
        1 => Vec::new(),
        2 => vec![Vector::from_vec(vec![-u[1], u[0]])],
        _ => {
            // Gram-Schmidt over the standard basis, skipping the axis most aligned with u.
            let skip = (0..n)
                .max_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()))
                .unwrap();
            let mut basis: Vec<Vector> = Vec::with_capacity(n - 1);
            for k in (0..n).filter(|&k| k != skip) {
                let mut v = Vector::zeros(n);
                v[k] = 1.0;
                v -= &u * u.dot(&v);
                for b in &basis {
                    let d = b.dot(&v);
                    v -= b * d;
                }
                basis.push(v.normalize());
            }
            let mut cols: Vec<&Vector> = vec![&u];
            cols.extend(basis.iter());
            if det_columns(&cols) < 0.0 {
                let last = basis.len() - 1;
                basis[last] = -&basis[last];
            }
            basis
        }
    }
}

/// Unit normal of the hyperplane spanned by `n - 1` vectors in dimension `n`
/// (generalized cross product), or `None` if they are dependent.
pub fn hyperplane_normal(spanning: &[Vector]) -> Option<Vector> {
    let n = spanning.len() + 1;
    let mut normal = Vector::zeros(n);
    for k in 0..n {
        let minor = DMatrix::from_fn(n - 1, n - 1, |i, j| {
            let col = if j < k { j } else { j + 1 };
            spanning[i][col]
        });
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        normal[k] = sign * minor.determinant();
    }
    let norm = normal.norm();
    let scale: f64 = spanning.iter().map(|v| v.norm()).product();
    if norm <= 1e-12 * scale.max(1e-300) {
        None
    } else {
        Some(normal / norm)
    }
}

/// Numerical rank of a set of vectors with relative tolerance `tol`.
pub fn rank(vectors: &[&Vector], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let m = DMatrix::from_fn(vectors.len(), n, |i, j| vectors[i][j]);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * max.max(1e-300)).count()
}

/// Restriction of a symmetric matrix to the span of an orthonormal basis.
pub fn restrict(m: &Matrix, basis: &[Vector]) -> Matrix {
    let k = basis.len();
    DMatrix::from_fn(k, k, |i, j| basis[i].dot(&(m * &basis[j])))
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &Matrix) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn vector(data: &[f64]) -> Vector {
    DVector::from_column_slice(data)
}

pub fn basis_vector(n: usize, k: usize) -> Vector {
    let mut v = Vector::zeros(n);
    v[k] = 1.0;
    v
}
