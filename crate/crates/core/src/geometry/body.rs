use super::hull::{convex_hull, Facet};
use super::simplex::Simplex;
use crate::error::{Error, Result};
use crate::{Matrix, Vector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Volume of the Euclidean unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let (mut k, mut v) = if n % 2 == 0 { (0, 1.0) } else { (1, 2.0) };
    while k < n {
        k += 2;
        v *= 2.0 * PI / k as f64;
    }
    v
}

/// Full-dimensional polytope given by its extreme points.
///
/// In dimensions 1 to 3 the facet structure and a triangulation are built
/// at construction. From dimension 4 on only the vertex list is kept.
#[derive(Debug, Clone)]
pub struct Polytope {
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    simplices: Vec<Simplex>,
}

impl Polytope {
    pub fn new(points: &[Vector]) -> Result<Self> {
        let hull = convex_hull(points)?;
        let simplices = if hull.facets.is_empty() {
            Vec::new()
        } else {
            cone_triangulation(&hull.vertices, &hull.facets)?
        };
        Ok(Self {
            vertices: hull.vertices,
            facets: hull.facets,
            simplices,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Empty from dimension 4 on.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn simplices(&self) -> Result<&[Simplex]> {
        if self.simplices.is_empty() {
            return Err(Error::UnsupportedDimension {
                dim: self.dim(),
                reason: "polytopes are triangulated only up to dimension 3".into(),
            });
        }
        Ok(&self.simplices)
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(self.simplices()?.iter().map(Simplex::volume).sum())
    }

    pub fn barycenter(&self) -> Result<Vector> {
        let mut acc = Vector::zeros(self.dim());
        let mut vol = 0.0;
        for s in self.simplices()? {
            acc += s.centroid() * s.volume();
            vol += s.volume();
        }
        Ok(acc / vol)
    }

    pub fn second_moment(&self) -> Result<Matrix> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for s in self.simplices()? {
            m += s.second_moment();
        }
        Ok(m)
    }

    pub fn support(&self, y: &Vector) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(y))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Cones from vertex 0 over every facet that does not contain it; facets
/// are fanned from their first vertex.
fn cone_triangulation(vertices: &[Vector], facets: &[Facet]) -> Result<Vec<Simplex>> {
    let apex = &vertices[0];
    let mut out = Vec::new();
    for f in facets {
        if f.vertices.contains(&0) {
            continue;
        }
        let ring = &f.vertices;
        let pieces: Vec<Vec<usize>> = match ring.len() {
            1 | 2 => vec![ring.clone()],
            k => (1..k - 1).map(|i| vec![ring[0], ring[i], ring[i + 1]]).collect(),
        };
        for piece in pieces {
            let mut vs = Vec::with_capacity(piece.len() + 1);
            vs.push(apex.clone());
            vs.extend(piece.iter().map(|&i| vertices[i].clone()));
            out.push(Simplex::new(vs)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
}

#[derive(Debug, Clone)]
pub struct AffineImage {
    base: Box<ConvexBody>,
    matrix: Matrix,
    inverse: Matrix,
    shift: Vector,
    det: f64,
}

impl AffineImage {
    pub fn base(&self) -> &ConvexBody {
        &self.base
    }
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }
    pub fn shift(&self) -> &Vector {
        &self.shift
    }
    pub fn det(&self) -> f64 {
        self.det
    }
    /// Preimage of `x` in the base body.
    pub fn pull_back(&self, x: &Vector) -> Vector {
        &self.inverse * (x - &self.shift)
    }
}

/// A convex body with nonempty interior.
#[derive(Debug, Clone)]
pub enum ConvexBody {
    VPolytope(Polytope),
    Ball(Ball),
    AffineImage(AffineImage),
}

pub(crate) fn check_invertible(a: &Matrix) -> Result<f64> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let det = a.determinant();
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !det.is_finite() || det.abs() <= 1e-12 * scale.powi(n as i32) || scale == 0.0 {
        return Err(Error::NonInvertible { det });
    }
    Ok(det)
}

impl ConvexBody {
    pub fn polytope(points: &[Vector]) -> Result<Self> {
        Ok(Self::VPolytope(Polytope::new(points)?))
    }

    /// Convenience constructor from coordinate rows.
    pub fn polytope_from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let pts: Vec<Vector> = rows.iter().map(|r| Vector::from_row_slice(r)).collect();
        Self::polytope(&pts)
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("ball center must be a finite point".into()));
        }
        Ok(Self::Ball(Ball { center, radius }))
    }

    pub fn unit_ball(n: usize) -> Self {
        Self::Ball(Ball {
            center: Vector::zeros(n),
            radius: 1.0,
        })
    }

    /// `[-h, h]^n`.
    pub fn cube(n: usize, h: f64) -> Result<Self> {
        let pts: Vec<Vector> = (0..1usize << n)
            .map(|mask| {
                Vector::from_iterator(n, (0..n).map(|i| if mask >> i & 1 == 1 { h } else { -h }))
            })
            .collect();
        Self::polytope(&pts)
    }

    /// Regular `k`-gon inscribed in the circle of the given radius about the origin.
    pub fn regular_polygon(k: usize, radius: f64) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidInput("a polygon needs at least 3 vertices".into()));
        }
        let pts: Vec<Vector> = (0..k)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / k as f64;
                Vector::from_vec(vec![radius * a.cos(), radius * a.sin()])
            })
            .collect();
        Self::polytope(&pts)
    }

    /// The body `{A x + shift : x ∈ base}` kept symbolically.
    pub fn affine_image(base: ConvexBody, matrix: Matrix, shift: Vector) -> Result<Self> {
        let n = base.dim();
        if matrix.nrows() != n || shift.len() != n {
            return Err(Error::InvalidInput("affine map dimension mismatch".into()));
        }
        let det = check_invertible(&matrix)?;
        let inverse = matrix
            .clone()
            .try_inverse()
            .ok_or(Error::NonInvertible { det })?;
        Ok(Self::AffineImage(AffineImage {
            base: Box::new(base),
            matrix,
            inverse,
            shift,
            det,
        }))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::VPolytope(p) => p.dim(),
            Self::Ball(b) => b.center.len(),
            Self::AffineImage(a) => a.shift.len(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::VPolytope(_) => "vpolytope",
            Self::Ball(_) => "ball",
            Self::AffineImage(_) => "affine",
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Self::VPolytope(p) => Some(p),
            _ => None,
        }
    }

    pub fn volume(&self) -> Result<f64> {
        match self {
            Self::VPolytope(p) => p.volume(),
            Self::Ball(b) => Ok(unit_ball_volume(b.center.len()) * b.radius.powi(b.center.len() as i32)),
            Self::AffineImage(a) => Ok(a.det.abs() * a.base.volume()?),
        }
    }

    pub fn barycenter(&self) -> Result<Vector> {
        match self {
            Self::VPolytope(p) => p.barycenter(),
            Self::Ball(b) => Ok(b.center.clone()),
            Self::AffineImage(a) => Ok(&a.matrix * a.base.barycenter()? + &a.shift),
        }
    }

    /// `∫_K x xᵀ dx`.
    pub fn second_moment(&self) -> Result<Matrix> {
        match self {
            Self::VPolytope(p) => p.second_moment(),
            Self::Ball(b) => {
                let n = b.center.len();
                let vol = self.volume()?;
                let r2 = b.radius * b.radius / (n + 2) as f64;
                Ok((&b.center * b.center.transpose() + Matrix::identity(n, n) * r2) * vol)
            }
            Self::AffineImage(a) => {
                let vol = a.base.volume()?;
                let m1 = a.base.barycenter()? * vol;
                let m2 = a.base.second_moment()?;
                let am1 = &a.matrix * m1;
                let c = &a.shift;
                let out = &a.matrix * m2 * a.matrix.transpose()
                    + &am1 * c.transpose()
                    + c * am1.transpose()
                    + c * c.transpose() * vol;
                Ok(out * a.det.abs())
            }
        }
    }

    /// Classical support function `sup_{x∈K} ⟨x, y⟩`.
    pub fn support(&self, y: &Vector) -> f64 {
        match self {
            Self::VPolytope(p) => p.support(y),
            Self::Ball(b) => b.center.dot(y) + b.radius * y.norm(),
            Self::AffineImage(a) => a.base.support(&(a.matrix.transpose() * y)) + a.shift.dot(y),
        }
    }

    /// Positive inside the interior, zero on the boundary, negative outside.
    /// For polytopes and balls this is the Euclidean distance to the boundary
    /// (for interior points) or a facet violation; affine images report the
    /// depth of the preimage.
    pub fn interior_depth(&self, x: &Vector) -> f64 {
        match self {
            Self::VPolytope(p) if !p.facets.is_empty() => p
                .facets
                .iter()
                .map(|f| f.offset - f.normal.dot(x))
                .fold(f64::INFINITY, f64::min),
            Self::VPolytope(_) => {
                // No facets: depth along coordinate lines via the fiber LP.
                let n = self.dim();
                let mut depth = f64::INFINITY;
                for i in 0..n {
                    let e = Vector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
                    match super::fiber::line_extent(self, x, &e) {
                        Some((g, f)) => depth = depth.min(-g).min(f),
                        None => return -1.0,
                    }
                }
                depth
            }
            Self::Ball(b) => b.radius - (x - &b.center).norm(),
            Self::AffineImage(a) => a.base.interior_depth(&a.pull_back(x)),
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.interior_depth(x) >= -tol
    }

    /// `K + x`.
    pub fn translate(&self, x: &Vector) -> Self {
        match self {
            Self::VPolytope(p) => Self::VPolytope(Polytope {
                vertices: p.vertices.iter().map(|v| v + x).collect(),
                facets: p
                    .facets
                    .iter()
                    .map(|f| Facet {
                        normal: f.normal.clone(),
                        offset: f.offset + f.normal.dot(x),
                        vertices: f.vertices.clone(),
                    })
                    .collect(),
                simplices: p
                    .simplices
                    .iter()
                    .map(|s| {
                        Simplex::new(s.vertices().iter().map(|v| v + x).collect())
                            .expect("translation preserves volume")
                    })
                    .collect(),
            }),
            Self::Ball(b) => Self::Ball(Ball {
                center: &b.center + x,
                radius: b.radius,
            }),
            Self::AffineImage(a) => Self::AffineImage(AffineImage {
                base: a.base.clone(),
                matrix: a.matrix.clone(),
                inverse: a.inverse.clone(),
                shift: &a.shift + x,
                det: a.det,
            }),
        }
    }

    /// Polytope approximation: polytopes are returned unchanged, balls in the
    /// plane become inscribed regular polygons with `resolution` vertices,
    /// balls in space use `resolution` Fibonacci points on the sphere.
    pub fn materialize(&self, resolution: usize) -> Result<Self> {
        match self {
            Self::VPolytope(_) => Ok(self.clone()),
            Self::Ball(b) => {
                let n = b.center.len();
                let pts: Vec<Vector> = match n {
                    1 => vec![
                        Vector::from_element(1, b.center[0] - b.radius),
                        Vector::from_element(1, b.center[0] + b.radius),
                    ],
                    2 => {
                        let k = resolution.max(3);
                        (0..k)
                            .map(|i| {
                                let a = 2.0 * PI * i as f64 / k as f64;
                                &b.center + Vector::from_vec(vec![a.cos(), a.sin()]) * b.radius
                            })
                            .collect()
                    }
                    3 => {
                        let k = resolution.max(4);
                        let golden = PI * (3.0 - 5f64.sqrt());
                        (0..k)
                            .map(|i| {
                                let z = 1.0 - (2.0 * i as f64 + 1.0) / k as f64;
                                let r = (1.0 - z * z).sqrt();
                                let phi = golden * i as f64;
                                &b.center
                                    + Vector::from_vec(vec![r * phi.cos(), r * phi.sin(), z]) * b.radius
                            })
                            .collect()
                    }
                    _ => {
                        return Err(Error::UnsupportedDimension {
                            dim: n,
                            reason: "ball materialization is limited to dimension 3".into(),
                        })
                    }
                };
                Self::polytope(&pts)
            }
            Self::AffineImage(a) => {
                let base = a.base.materialize(resolution)?;
                let p = base.as_polytope().expect("materialized base is a polytope");
                let pts: Vec<Vector> = p.vertices.iter().map(|v| &a.matrix * v + &a.shift).collect();
                Self::polytope(&pts)
            }
        }
    }

    /// Vertex-set equality up to `tol` (polytopes), or parameter equality (balls).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Self::VPolytope(a), Self::VPolytope(b)) => {
                let covers = |x: &[Vector], y: &[Vector]| {
                    x.iter().all(|p| y.iter().any(|q| (p - q).norm() <= tol))
                };
                covers(&a.vertices, &b.vertices) && covers(&b.vertices, &a.vertices)
            }
            (Self::Ball(a), Self::Ball(b)) => {
                (&a.center - &b.center).norm() <= tol && (a.radius - b.radius).abs() <= tol
            }
            _ => false,
        }
    }

    pub fn to_spec(&self) -> BodySpec {
        match self {
            Self::VPolytope(p) => BodySpec::VPolytope {
                vertices: p.vertices.iter().map(|v| v.iter().cloned().collect()).collect(),
            },
            Self::Ball(b) => BodySpec::Ball {
                center: b.center.iter().cloned().collect(),
                radius: b.radius,
            },
            Self::AffineImage(a) => BodySpec::Affine {
                base: Box::new(a.base.to_spec()),
                matrix: (0..a.matrix.nrows())
                    .map(|i| a.matrix.row(i).iter().cloned().collect())
                    .collect(),
                shift: a.shift.iter().cloned().collect(),
            },
        }
    }

    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        match spec {
            BodySpec::VPolytope { vertices } => {
                if vertices.is_empty() {
                    return Err(Error::DegenerateBody("empty vertex list".into()));
                }
                Self::polytope_from_rows(vertices)
            }
            BodySpec::Ball { center, radius } => Self::ball(Vector::from_row_slice(center), *radius),
            BodySpec::Affine { base, matrix, shift } => {
                let base = Self::from_spec(base)?;
                let n = base.dim();
                if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput("affine matrix must be n×n".into()));
                }
                let m = Matrix::from_fn(n, n, |i, j| matrix[i][j]);
                Self::affine_image(base, m, Vector::from_row_slice(shift))
            }
        }
    }
}

/// JSON form of a body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    #[serde(rename = "vpolytope")]
    VPolytope { vertices: Vec<Vec<f64>> },
    Ball { center: Vec<f64>, radius: f64 },
    /// Row-major matrix.
    Affine {
        base: Box<BodySpec>,
        matrix: Vec<Vec<f64>>,
        shift: Vec<f64>,
    },
}

impl Serialize for ConvexBody {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = BodySpec::deserialize(d)?;
        Self::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}
