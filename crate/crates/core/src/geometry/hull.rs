//! Convex-hull canonicalization for V-polytopes.
//!
//! - 1-D: the two extreme points.
//! - 2-D: Andrew's monotone chain, counter-clockwise, collinear points dropped.
//! - 3-D: supporting-plane enumeration over point triples with early exit,
//!   then a planar hull per facet plane. Coplanar points are merged into one
//!   polygonal facet, which the polar construction relies on.
//! - 4-D and up: points are deduplicated and the affine rank checked; no facets.
//!
//! All predicates use a relative tolerance of `1e-10 · scale`, where `scale`
//! is the largest distance of a point from the centroid.

use crate::error::{Error, Result};
use crate::Vector;
use nalgebra::{DMatrix, Vector2, Vector3};

pub const HULL_REL_TOL: f64 = 1e-10;

/// A facet `{x : ⟨normal, x⟩ = offset}` with outward unit normal. Vertex
/// indices are ordered counter-clockwise when seen from outside (3-D) or
/// tail-to-head along the boundary (2-D).
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub vertices: Vec<Vector>,
    pub facets: Vec<Facet>,
}

fn centroid(points: &[Vector]) -> Vector {
    let dim = points[0].len();
    let mut c = Vector::zeros(dim);
    for p in points {
        c += p;
    }
    c / points.len() as f64
}

/// Largest distance from the centroid; at least `f64::MIN_POSITIVE`.
pub fn point_scale(points: &[Vector]) -> f64 {
    if points.is_empty() {
        return 1.0;
    }
    let c = centroid(points);
    points
        .iter()
        .map(|p| (p - &c).norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
}

/// Removes points closer than `tol` to an earlier one, preserving order.
pub fn dedup_points(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (p - q).norm() <= tol) {
            out.push(p.clone());
        }
    }
    out
}

/// Affine rank of a point set at the given relative tolerance.
pub fn affine_rank(points: &[Vector], rel_tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let dim = points[0].len();
    let base = &points[0];
    let mut m = DMatrix::zeros(dim, points.len() - 1);
    for (j, p) in points[1..].iter().enumerate() {
        m.set_column(j, &(p - base));
    }
    let sv = m.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

pub fn convex_hull(points: &[Vector]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::DegenerateBody("empty vertex list".into()));
    }
    let dim = points[0].len();
    if dim == 0 {
        return Err(Error::InvalidInput("zero-dimensional points".into()));
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("points of mixed dimension".into()));
    }
    if points.iter().any(|p| p.iter().any(|v| !v.is_finite())) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    let scale = point_scale(points);
    let pts = dedup_points(points, 1e-12 * scale);
    if pts.len() < dim + 1 || affine_rank(&pts, HULL_REL_TOL) < dim {
        return Err(Error::DegenerateBody(format!(
            "points span fewer than {dim} dimensions"
        )));
    }
    match dim {
        1 => Ok(hull_1d(&pts)),
        2 => hull_2d(&pts, scale),
        3 => hull_3d(&pts, scale),
        _ => Ok(Hull {
            vertices: pts,
            facets: Vec::new(),
        }),
    }
}

fn hull_1d(pts: &[Vector]) -> Hull {
    let lo = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    Hull {
        vertices: vec![Vector::from_element(1, lo), Vector::from_element(1, hi)],
        facets: vec![
            Facet {
                normal: Vector::from_element(1, -1.0),
                offset: -lo,
                vertices: vec![0],
            },
            Facet {
                normal: Vector::from_element(1, 1.0),
                offset: hi,
                vertices: vec![1],
            },
        ],
    }
}

fn cross2(o: Vector2<f64>, a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Whether `o → a → b` fails to turn counter-clockwise, up to `a` lying
/// within `tol` of the chord `o b`. A distance test, so one far point does
/// not swamp nearby ones.
fn not_left(o: Vector2<f64>, a: Vector2<f64>, b: Vector2<f64>, tol: f64) -> bool {
    cross2(o, a, b) <= tol * (b - o).norm()
}

/// Monotone chain over planar points; returns indices in counter-clockwise
/// order. `tol` is a distance.
pub(crate) fn monotone_chain(pts: &[Vector2<f64>], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a]
            .x
            .partial_cmp(&pts[b].x)
            .unwrap()
            .then(pts[a].y.partial_cmp(&pts[b].y).unwrap())
    });
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && not_left(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i], tol)
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && not_left(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i], tol)
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_2d(pts: &[Vector], scale: f64) -> Result<Hull> {
    let planar: Vec<Vector2<f64>> = pts.iter().map(|p| Vector2::new(p[0], p[1])).collect();
    let order = monotone_chain(&planar, HULL_REL_TOL * scale);
    if order.len() < 3 {
        return Err(Error::DegenerateBody("collinear polygon".into()));
    }
    let vertices: Vec<Vector> = order.iter().map(|&i| pts[i].clone()).collect();
    let m = vertices.len();
    let facets = (0..m)
        .map(|i| {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % m];
            let e = b - a;
            let n = Vector::from_vec(vec![e[1], -e[0]]).normalize();
            let offset = n.dot(a);
            Facet {
                normal: n,
                offset,
                vertices: vec![i, (i + 1) % m],
            }
        })
        .collect();
    Ok(Hull { vertices, facets })
}

fn hull_3d(pts: &[Vector], scale: f64) -> Result<Hull> {
    let p3: Vec<Vector3<f64>> = pts.iter().map(|p| Vector3::new(p[0], p[1], p[2])).collect();
    let tol = HULL_REL_TOL * scale;
    let n = p3.len();
    let mut planes: Vec<(Vector3<f64>, f64)> = Vec::new();

    let known = |planes: &[(Vector3<f64>, f64)], nrm: &Vector3<f64>, off: f64| {
        planes
            .iter()
            .any(|(m, o)| m.dot(nrm) > 1.0 - 1e-9 && (o - off).abs() <= 10.0 * tol)
    };

    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let c = (p3[j] - p3[i]).cross(&(p3[k] - p3[i]));
                let len = c.norm();
                if len <= tol * scale {
                    continue;
                }
                let nrm = c / len;
                let off = nrm.dot(&p3[i]);
                let (mut pos, mut neg) = (false, false);
                for p in &p3 {
                    let d = nrm.dot(p) - off;
                    if d > tol {
                        pos = true;
                    } else if d < -tol {
                        neg = true;
                    }
                    if pos && neg {
                        break;
                    }
                }
                if pos && neg {
                    continue;
                }
                let (nrm, off) = if pos { (-nrm, -off) } else { (nrm, off) };
                if !known(&planes, &nrm, off) {
                    planes.push((nrm, off));
                }
            }
        }
    }
    if planes.len() < 4 {
        return Err(Error::DegenerateBody("fewer than four facet planes".into()));
    }

    // Facet polygons in plane coordinates; outward normal orientation.
    let mut raw_facets: Vec<(Vector3<f64>, f64, Vec<usize>)> = Vec::with_capacity(planes.len());
    for (nrm, off) in &planes {
        let on: Vec<usize> = (0..n)
            .filter(|&q| (nrm.dot(&p3[q]) - off).abs() <= tol)
            .collect();
        let helper = if nrm.x.abs() < 0.9 {
            Vector3::x()
        } else {
            Vector3::y()
        };
        let e1 = nrm.cross(&helper).normalize();
        let e2 = nrm.cross(&e1);
        let planar: Vec<Vector2<f64>> = on
            .iter()
            .map(|&q| Vector2::new(p3[q].dot(&e1), p3[q].dot(&e2)))
            .collect();
        let ring = monotone_chain(&planar, HULL_REL_TOL * scale);
        if ring.len() < 3 {
            continue;
        }
        // (e1, e2, n) is right-handed, so CCW in (e1, e2) is CCW seen from outside.
        raw_facets.push((*nrm, *off, ring.iter().map(|&r| on[r]).collect()));
    }

    let mut used: Vec<usize> = raw_facets.iter().flat_map(|f| f.2.iter().cloned()).collect();
    used.sort_by(|&a, &b| {
        pts[a]
            .iter()
            .zip(pts[b].iter())
            .map(|(x, y)| x.partial_cmp(y).unwrap())
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    used.dedup();
    let mut remap = vec![usize::MAX; n];
    for (new, &old) in used.iter().enumerate() {
        remap[old] = new;
    }
    let vertices = used.iter().map(|&i| pts[i].clone()).collect();
    let facets = raw_facets
        .into_iter()
        .map(|(nrm, off, ring)| Facet {
            normal: Vector::from_vec(vec![nrm.x, nrm.y, nrm.z]),
            offset: off,
            vertices: ring.into_iter().map(|i| remap[i]).collect(),
        })
        .collect();
    Ok(Hull { vertices, facets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    #[test]
    fn square_with_interior_and_collinear_points() {
        let pts = vec![
            v(&[-1.0, -1.0]),
            v(&[1.0, -1.0]),
            v(&[0.0, -1.0]),
            v(&[1.0, 1.0]),
            v(&[0.2, 0.3]),
            v(&[-1.0, 1.0]),
            v(&[-1.0, 1.0]),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            assert!((f.offset - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn far_vertex_keeps_nearby_corners() {
        let pts = vec![
            v(&[-1.3e6, -1.1e5]),
            v(&[-0.756, -5.098]),
            v(&[1.383, -0.078]),
            v(&[1.084, 0.710]),
            v(&[0.332, 1.748]),
        ];
        assert_eq!(convex_hull(&pts).unwrap().vertices.len(), 5);
    }

    #[test]
    fn cube_has_six_square_facets() {
        let mut pts = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    pts.push(v(&[x, y, z]));
                }
            }
        }
        pts.push(v(&[0.0, 0.0, 1.0]));
        pts.push(v(&[0.1, -0.2, 0.3]));
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        for f in &h.facets {
            assert_eq!(f.vertices.len(), 4);
            assert!((f.offset - 1.0).abs() < 1e-14);
            // counter-clockwise from outside
            let a = &h.vertices[f.vertices[0]];
            let b = &h.vertices[f.vertices[1]];
            let c = &h.vertices[f.vertices[2]];
            let ab = Vector3::new(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
            let ac = Vector3::new(c[0] - a[0], c[1] - a[1], c[2] - a[2]);
            let nn = Vector3::new(f.normal[0], f.normal[1], f.normal[2]);
            assert!(ab.cross(&ac).dot(&nn) > 0.0);
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let flat = vec![v(&[0.0, 0.0, 0.0]), v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[1.0, 1.0, 0.0])];
        assert!(matches!(convex_hull(&flat), Err(Error::DegenerateBody(_))));
        let line = vec![v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])];
        assert!(matches!(convex_hull(&line), Err(Error::DegenerateBody(_))));
        let point = vec![v(&[3.0]), v(&[3.0])];
        assert!(matches!(convex_hull(&point), Err(Error::DegenerateBody(_))));
    }

    #[test]
    fn interval_hull() {
        let h = convex_hull(&[v(&[2.0]), v(&[-1.0]), v(&[0.5])]).unwrap();
        assert_eq!(h.vertices, vec![v(&[-1.0]), v(&[2.0])]);
        assert_eq!(h.facets.len(), 2);
    }
}
