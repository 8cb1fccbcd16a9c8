//! Polytopes stored with both vertex and facet descriptions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hull::{extreme_points, hull_2d, hull_3d, hull_brute_force, HullFacet};
use crate::error::{GeomError, Result};
use crate::linalg::{det_columns, orthonormal_complement, rank};
use crate::{Matrix, Vector, TOL};

/// A facet `{y in P : <normal, y> = offset}`.
///
/// `vertices` index into the polytope's vertex list. In dimension 2 they are
/// the edge endpoints in counter-clockwise order; in dimension 3 they are the
/// facet polygon, counter-clockwise when seen from outside.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub vertices: Vec<usize>,
    /// (n-1)-dimensional Hausdorff measure of the facet.
    pub area: f64,
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
}

fn scale_of(points: &[Vector]) -> f64 {
    points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300)
}

fn mean(points: &[Vector]) -> Vector {
    let mut c = Vector::zeros(points[0].len());
    for p in points {
        c += p;
    }
    c / points.len() as f64
}

/// Sort the vertex indices of a 3D facet counter-clockwise around `normal`.
fn order_polygon(vertices: &[Vector], idx: &mut [usize], normal: &Vector) {
    let pts: Vec<Vector> = idx.iter().map(|&k| vertices[k].clone()).collect();
    let c = mean(&pts);
    let basis = orthonormal_complement(normal);
    let angle = |k: usize| {
        let d = &vertices[k] - &c;
        d.dot(&basis[1]).atan2(d.dot(&basis[0]))
    };
    idx.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
}

fn polygon_area_3d(vertices: &[Vector], idx: &[usize], normal: &Vector) -> f64 {
    let a = &vertices[idx[0]];
    let mut area = 0.0;
    for k in 1..idx.len().saturating_sub(1) {
        let b = &vertices[idx[k]] - a;
        let c = &vertices[idx[k + 1]] - a;
        area += 0.5 * det_columns(&[normal, &b, &c]);
    }
    area
}

impl Polytope {
    /// Convex hull of a finite point set. The hull must be full-dimensional
    /// (dimension 1 gives a segment).
    pub fn from_points(points: &[Vector]) -> Result<Polytope> {
        let dim = points.first().map(|p| p.len()).ok_or_else(|| {
            GeomError::DegenerateBody("empty point set".into())
        })?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(GeomError::DegenerateBody("points of mixed dimension".into()));
        }
        if points.iter().any(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(GeomError::DegenerateBody("non-finite coordinate".into()));
        }
        let tol = TOL * scale_of(points);
        match dim {
            1 => {
                let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
                let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
                if hi - lo <= tol {
                    return Err(GeomError::DegenerateBody("segment has zero length".into()));
                }
                Ok(Polytope::segment(lo, hi))
            }
            2 => {
                let idx = hull_2d(points, tol);
                if idx.len() < 3 {
                    return Err(GeomError::DegenerateBody("polygon has empty interior".into()));
                }
                let verts: Vec<Vector> = idx.iter().map(|&k| points[k].clone()).collect();
                Ok(Polytope::polygon_from_ccw(verts))
            }
            3 | 4 => {
                let diffs: Vec<Vector> = points.iter().map(|p| p - &points[0]).collect();
                let refs: Vec<&Vector> = diffs.iter().collect();
                if rank(&refs, 1e-9) < dim {
                    return Err(GeomError::DegenerateBody("point set has empty interior".into()));
                }
                let facets = if dim == 3 {
                    hull_3d(points, tol).unwrap_or_else(|| hull_brute_force(points, tol))
                } else {
                    hull_brute_force(points, tol)
                };
                Polytope::from_hull(points, dim, facets)
            }
            _ => Err(GeomError::Unsupported(format!("polytopes of dimension {dim}"))),
        }
    }

    fn from_hull(points: &[Vector], dim: usize, facets: Vec<HullFacet>) -> Result<Polytope> {
        let ext = extreme_points(points.len(), dim, &facets);
        let mut remap = vec![usize::MAX; points.len()];
        for (new, &old) in ext.iter().enumerate() {
            remap[old] = new;
        }
        let vertices: Vec<Vector> = ext.iter().map(|&k| points[k].clone()).collect();
        let planes: Vec<(Vector, f64, Vec<usize>)> = facets
            .into_iter()
            .map(|f| {
                let on: Vec<usize> = f.points.iter().map(|&k| remap[k]).filter(|&k| k != usize::MAX).collect();
                (f.normal, f.offset, on)
            })
            .collect();
        Polytope::assemble(dim, vertices, planes)
    }

    /// Build from vertices and facet planes with known incidences.
    fn assemble(dim: usize, vertices: Vec<Vector>, planes: Vec<(Vector, f64, Vec<usize>)>) -> Result<Polytope> {
        let mut facets = Vec::with_capacity(planes.len());
        for (normal, offset, mut idx) in planes {
            if idx.len() < dim {
                return Err(GeomError::DegenerateBody("facet with too few vertices".into()));
            }
            let area = match dim {
                3 => {
                    order_polygon(&vertices, &mut idx, &normal);
                    polygon_area_3d(&vertices, &idx, &normal)
                }
                4 => {
                    let basis = orthonormal_complement(&normal);
                    let local: Vec<Vector> = idx
                        .iter()
                        .map(|&k| Vector::from_iterator(3, basis.iter().map(|e| e.dot(&vertices[k]))))
                        .collect();
                    Polytope::from_points(&local)?.volume()?
                }
                _ => unreachable!(),
            };
            if area <= 0.0 {
                return Err(GeomError::DegenerateBody("facet with zero area".into()));
            }
            facets.push(Facet {
                normal,
                offset,
                vertices: idx,
                area,
            });
        }
        Ok(Polytope {
            dim,
            vertices,
            facets,
        })
    }

    pub fn segment(lo: f64, hi: f64) -> Polytope {
        Polytope {
            dim: 1,
            vertices: vec![Vector::from_element(1, lo), Vector::from_element(1, hi)],
            facets: vec![
                Facet {
                    normal: Vector::from_element(1, -1.0),
                    offset: -lo,
                    vertices: vec![0],
                    area: 1.0,
                },
                Facet {
                    normal: Vector::from_element(1, 1.0),
                    offset: hi,
                    vertices: vec![1],
                    area: 1.0,
                },
            ],
        }
    }

    /// Polygon from extreme points already in counter-clockwise order.
    fn polygon_from_ccw(vertices: Vec<Vector>) -> Polytope {
        let m = vertices.len();
        let facets = (0..m)
            .map(|i| {
                let j = (i + 1) % m;
                let d = &vertices[j] - &vertices[i];
                let len = d.norm();
                let normal = Vector::from_vec(vec![d[1] / len, -d[0] / len]);
                let offset = normal.dot(&vertices[i]);
                Facet {
                    normal,
                    offset,
                    vertices: vec![i, j],
                    area: len,
                }
            })
            .collect();
        Polytope {
            dim: 2,
            vertices,
            facets,
        }
    }

    /// The polytope `{y : <a_j, y> <= b_j}`; must be bounded with nonempty interior.
    pub fn from_halfspaces(normals: &[Vector], offsets: &[f64]) -> Result<Polytope> {
        if normals.len() != offsets.len() || normals.is_empty() {
            return Err(GeomError::DegenerateBody("mismatched halfspace data".into()));
        }
        let dim = normals[0].len();
        let scale = offsets.iter().map(|b| b.abs()).fold(0.0, f64::max).max(1.0);
        let mut candidates: Vec<Vector> = Vec::new();
        let m = normals.len();
        let mut combo: Vec<usize> = (0..dim).collect();
        if m < dim {
            return Err(GeomError::DegenerateBody("unbounded halfspace intersection".into()));
        }
        loop {
            let a = Matrix::from_fn(dim, dim, |i, j| normals[combo[i]][j]);
            let b = Vector::from_iterator(dim, combo.iter().map(|&k| offsets[k]));
            if a.determinant().abs() > 1e-12 {
                if let Some(x) = a.lu().solve(&b) {
                    let feasible = normals
                        .iter()
                        .zip(offsets)
                        .all(|(n, &o)| n.dot(&x) <= o + 1e3 * TOL * scale * n.norm());
                    if feasible {
                        candidates.push(x);
                    }
                }
            }
            let mut i = dim;
            loop {
                if i == 0 {
                    return Polytope::from_points(&candidates);
                }
                i -= 1;
                if combo[i] < m - dim + i {
                    break;
                }
            }
            combo[i] += 1;
            for j in i + 1..dim {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }

    /// The cube `[-r, r]^n`.
    pub fn cube(dim: usize, r: f64) -> Polytope {
        let pts: Vec<Vector> = (0..1usize << dim)
            .map(|i| Vector::from_iterator(dim, (0..dim).map(|b| if i >> b & 1 == 1 { r } else { -r })))
            .collect();
        Polytope::from_points(&pts).expect("cube is full-dimensional")
    }

    /// The cross-polytope `conv{±r e_i}`.
    pub fn cross_polytope(dim: usize, r: f64) -> Polytope {
        let mut pts = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            for s in [r, -r] {
                let mut v = Vector::zeros(dim);
                v[k] = s;
                pts.push(v);
            }
        }
        Polytope::from_points(&pts).expect("cross-polytope is full-dimensional")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_areas(&self) -> Vec<f64> {
        self.facets.iter().map(|f| f.area).collect()
    }

    /// Largest vertex norm; sets the scale of absolute tolerances.
    pub fn scale(&self) -> f64 {
        scale_of(&self.vertices)
    }

    pub fn tol(&self) -> f64 {
        TOL * self.scale()
    }

    /// Average of the vertices (an interior point).
    pub fn vertex_barycenter(&self) -> Vector {
        mean(&self.vertices)
    }

    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest distance from `x` to a facet hyperplane; positive iff `x` is interior.
    pub fn margin(&self, x: &Vector) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset - f.normal.dot(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.margin(x) >= -self.tol()
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn translate(&self, t: &Vector) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v + t).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset + f.normal.dot(t),
                vertices: f.vertices.clone(),
                area: f.area,
            })
            .collect();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
        }
    }

    /// Image under `x -> a x + t` for invertible `a`.
    pub fn affine_image(&self, a: &Matrix, t: &Vector) -> Result<Polytope> {
        if a.determinant().abs() <= 1e-14 {
            return Err(GeomError::DegenerateBody("singular linear map".into()));
        }
        let pts: Vec<Vector> = self.vertices.iter().map(|v| a * v + t).collect();
        Polytope::from_points(&pts)
    }

    pub fn linear_image(&self, a: &Matrix) -> Result<Polytope> {
        self.affine_image(a, &Vector::zeros(self.dim))
    }

    /// The polar body `{y : <v, y> <= 1 for all vertices v}`.
    pub fn polar(&self) -> Result<Polytope> {
        let tol = self.tol();
        if self.facets.iter().any(|f| f.offset <= tol) {
            return Err(GeomError::OriginNotInterior);
        }
        let vertices: Vec<Vector> = self.facets.iter().map(|f| &f.normal / f.offset).collect();
        match self.dim {
            1 => Ok(Polytope::segment(vertices[0][0], vertices[1][0])),
            2 => {
                // Facet k of the polar is dual to the vertex shared by edges k and k+1.
                let m = vertices.len();
                let mut facets = Vec::with_capacity(m);
                for k in 0..m {
                    let j = (k + 1) % m;
                    let v = &self.vertices[self.facets[k].vertices[1]];
                    let r = v.norm();
                    facets.push(Facet {
                        normal: v / r,
                        offset: 1.0 / r,
                        vertices: vec![k, j],
                        area: (&vertices[j] - &vertices[k]).norm(),
                    });
                }
                Ok(Polytope {
                    dim: 2,
                    vertices,
                    facets,
                })
            }
            _ => {
                let planes = self
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let r = v.norm();
                        let idx: Vec<usize> = (0..self.facets.len())
                            .filter(|&j| self.facets[j].vertices.contains(&i))
                            .collect();
                        (v / r, 1.0 / r, idx)
                    })
                    .collect();
                Polytope::assemble(self.dim, vertices, planes)
            }
        }
    }

    /// Simplices (as `dim + 1` points) of a triangulation by cones from an interior point.
    fn simplices(&self) -> Vec<Vec<Vector>> {
        let c = self.vertex_barycenter();
        let mut out = Vec::new();
        match self.dim {
            2 => {
                for f in &self.facets {
                    out.push(vec![
                        c.clone(),
                        self.vertices[f.vertices[0]].clone(),
                        self.vertices[f.vertices[1]].clone(),
                    ]);
                }
            }
            3 => {
                for f in &self.facets {
                    let a = &self.vertices[f.vertices[0]];
                    for k in 1..f.vertices.len() - 1 {
                        out.push(vec![
                            c.clone(),
                            a.clone(),
                            self.vertices[f.vertices[k]].clone(),
                            self.vertices[f.vertices[k + 1]].clone(),
                        ]);
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Lebesgue measure. Exact for dimension <= 3; Monte Carlo for dimension 4.
    pub fn volume(&self) -> Result<f64> {
        match self.dim {
            1 => Ok(self.vertices[1][0] - self.vertices[0][0]),
            2 | 3 => {
                let fact = if self.dim == 2 { 2.0 } else { 6.0 };
                let v: f64 = self
                    .simplices()
                    .iter()
                    .map(|s| {
                        let d: Vec<Vector> = s[1..].iter().map(|p| p - &s[0]).collect();
                        let refs: Vec<&Vector> = d.iter().collect();
                        det_columns(&refs).abs() / fact
                    })
                    .sum();
                if v <= 0.0 {
                    return Err(GeomError::DegenerateBody("zero volume".into()));
                }
                Ok(v)
            }
            _ => Ok(self.monte_carlo_volume(400_000, 0x5eed).0),
        }
    }

    /// The moment `∫_P x dx` (volume times barycenter).
    pub fn centroid_integral(&self) -> Result<Vector> {
        match self.dim {
            1 => {
                let (a, b) = (self.vertices[0][0], self.vertices[1][0]);
                Ok(Vector::from_element(1, 0.5 * (b * b - a * a)))
            }
            2 | 3 => {
                let fact = if self.dim == 2 { 2.0 } else { 6.0 };
                let mut m = Vector::zeros(self.dim);
                for s in self.simplices() {
                    let d: Vec<Vector> = s[1..].iter().map(|p| p - &s[0]).collect();
                    let refs: Vec<&Vector> = d.iter().collect();
                    let vol = det_columns(&refs).abs() / fact;
                    m += mean(&s) * vol;
                }
                Ok(m)
            }
            _ => Ok(self.monte_carlo_moment(400_000, 0x5eed).0),
        }
    }

    fn bounding_box(&self) -> (Vector, Vector) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    fn hit_samples(&self, samples: usize, seed: u64) -> (Vec<Option<Vector>>, f64) {
        let (lo, hi) = self.bounding_box();
        let box_vol: f64 = (0..self.dim).map(|k| hi[k] - lo[k]).product();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..samples)
            .map(|_| {
                let x = Vector::from_iterator(self.dim, (0..self.dim).map(|k| rng.gen_range(lo[k]..hi[k])));
                (self.margin(&x) >= 0.0).then_some(x)
            })
            .collect();
        (pts, box_vol)
    }

    /// Hit-or-miss estimate of the volume, with its standard error.
    pub fn monte_carlo_volume(&self, samples: usize, seed: u64) -> (f64, f64) {
        let (pts, box_vol) = self.hit_samples(samples, seed);
        let p = pts.iter().filter(|x| x.is_some()).count() as f64 / samples as f64;
        (p * box_vol, box_vol * (p * (1.0 - p) / samples as f64).sqrt())
    }

    /// Hit-or-miss estimate of `∫_P x dx`, with componentwise standard errors.
    pub fn monte_carlo_moment(&self, samples: usize, seed: u64) -> (Vector, Vector) {
        let (pts, box_vol) = self.hit_samples(samples, seed);
        let n = samples as f64;
        let mut s1 = Vector::zeros(self.dim);
        let mut s2 = Vector::zeros(self.dim);
        for x in pts.iter().flatten() {
            s1 += x;
            s2 += x.component_mul(x);
        }
        let mean = &s1 / n;
        let var = &s2 / n - mean.component_mul(&mean);
        let se = var.map(|v| box_vol * (v.max(0.0) / n).sqrt());
        (mean * box_vol, se)
    }

    /// Orthogonal projection onto the hyperplane with unit normal `normal`,
    /// in the coordinates of `orthonormal_complement(normal)`.
    pub fn project(&self, normal: &Vector) -> Result<Polytope> {
        let basis = orthonormal_complement(normal);
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .map(|v| Vector::from_iterator(basis.len(), basis.iter().map(|e| e.dot(v))))
            .collect();
        Polytope::from_points(&pts)
    }

    /// Volume of the orthogonal projection onto `normal⊥`, by Cauchy's formula
    /// `(1/2) Σ |F| |<n_F, u>|` for unit `normal`.
    pub fn projection_volume(&self, normal: &Vector) -> f64 {
        0.5 * self
            .facets
            .iter()
            .map(|f| f.area * f.normal.dot(normal).abs())
            .sum::<f64>()
    }

    /// Check the invariants tying the two descriptions together.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e3 * self.tol();
        for f in &self.facets {
            if !(f.area > 0.0) {
                return Err(GeomError::DegenerateBody("nonpositive facet area".into()));
            }
            if (f.normal.norm() - 1.0).abs() > 1e-9 {
                return Err(GeomError::DegenerateBody("facet normal not unit".into()));
            }
            for v in &self.vertices {
                if f.normal.dot(v) > f.offset + tol {
                    return Err(GeomError::DegenerateBody("vertex outside a facet halfspace".into()));
                }
            }
            let on: Vec<Vector> = self
                .vertices
                .iter()
                .filter(|v| (f.normal.dot(v) - f.offset).abs() <= tol)
                .map(|v| v - &self.vertices[f.vertices[0]])
                .collect();
            let refs: Vec<&Vector> = on.iter().collect();
            if self.dim > 1 && rank(&refs, 1e-9) < self.dim - 1 {
                return Err(GeomError::DegenerateBody("facet spanned by too few vertices".into()));
            }
        }
        if self.dim >= 2 {
            let pts = self.vertices.clone();
            for k in 0..pts.len() {
                let others: Vec<Vector> = pts.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p.clone()).collect();
                if let Ok(q) = Polytope::from_points(&others) {
                    if q.margin(&pts[k]) >= -tol {
                        return Err(GeomError::DegenerateBody("non-extreme vertex".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn same_vertex_set(a: &Polytope, b: &Polytope, tol: f64) -> bool {
        a.vertices().len() == b.vertices().len()
            && a.vertices()
                .iter()
                .all(|v| b.vertices().iter().any(|w| (v - w).norm() <= tol))
    }

    #[test]
    fn square_polar_is_cross_polytope() {
        let sq = Polytope::cube(2, 1.0);
        let p = sq.polar().unwrap();
        assert!(same_vertex_set(&p, &Polytope::cross_polytope(2, 1.0), 1e-12));
        assert!((p.volume().unwrap() - 2.0).abs() < 1e-14);
        p.validate().unwrap();
    }

    #[test]
    fn cube_polar_is_octahedron() {
        let c = Polytope::cube(3, 1.0);
        assert_eq!(c.facets().len(), 6);
        assert!((c.volume().unwrap() - 8.0).abs() < 1e-12);
        let p = c.polar().unwrap();
        assert!(same_vertex_set(&p, &Polytope::cross_polytope(3, 1.0), 1e-12));
        assert_eq!(p.facets().len(), 8);
        assert!((p.volume().unwrap() - 4.0 / 3.0).abs() < 1e-12);
        p.validate().unwrap();
    }

    #[test]
    fn polar_is_an_involution() {
        let t = Polytope::from_points(&[vector(&[2.0, 0.0]), vector(&[0.0, 2.0]), vector(&[-1.0, -1.0])]).unwrap();
        let pp = t.polar().unwrap().polar().unwrap();
        assert!(same_vertex_set(&t, &pp, 1e-12));
    }

    #[test]
    fn polar_requires_interior_origin() {
        let t = Polytope::from_points(&[vector(&[0.0, 0.0]), vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        assert_eq!(t.polar().unwrap_err(), GeomError::OriginNotInterior);
    }

    #[test]
    fn simplex_moment() {
        let t = Polytope::from_points(&[vector(&[0.0, 0.0]), vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        assert!((t.volume().unwrap() - 0.5).abs() < 1e-15);
        let m = t.centroid_integral().unwrap();
        assert!((m - vector(&[1.0 / 6.0, 1.0 / 6.0])).norm() < 1e-15);
    }

    #[test]
    fn projections() {
        let c = Polytope::cube(3, 1.0);
        let p = c.project(&vector(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(p.dim(), 2);
        assert!((p.volume().unwrap() - 4.0).abs() < 1e-12);
        let x = Polytope::cross_polytope(2, 1.0);
        let s = x.project(&vector(&[1.0, 0.0])).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((s.volume().unwrap() - 2.0).abs() < 1e-15);
        let u = vector(&[0.3, -0.4, 0.8]).normalize();
        assert!((c.project(&u).unwrap().volume().unwrap() - c.projection_volume(&u)).abs() < 1e-12);
    }

    #[test]
    fn halfspaces_give_square() {
        let normals = vec![vector(&[1.0, 0.0]), vector(&[-1.0, 0.0]), vector(&[0.0, 1.0]), vector(&[0.0, -1.0])];
        let p = Polytope::from_halfspaces(&normals, &[1.0; 4]).unwrap();
        assert!(same_vertex_set(&p, &Polytope::cube(2, 1.0), 1e-12));
    }

    #[test]
    fn tesseract_monte_carlo_volume() {
        let t = Polytope::cube(4, 1.0);
        assert_eq!(t.facets().len(), 8);
        assert!((t.facets()[0].area - 8.0).abs() < 1e-12);
        let (v, se) = t.monte_carlo_volume(10_000, 1);
        assert!((v - 16.0).abs() <= 1e-9 + 3.0 * se);
    }
}
