use super::body::{Ball, ConvexBody};
use super::fiber::{complement_basis, fiber_extent};
use super::Direction;
use crate::error::{Error, Result};
use crate::Vector;

/// Steiner symmetral `σ_u K`: every chord parallel to `u` is slid along `u`
/// until its midpoint lies on `u^⊥`.
///
/// For a polytope the chord length is concave and piecewise linear over the
/// overlay of the projected upper and lower boundary subdivisions, so the
/// symmetral is the hull of `x ± ℓ(x)/2 · u` over the overlay vertices. In the
/// plane those are the projected vertices; in space the crossings of
/// projected edges are breakpoints as well.
pub fn steiner_symmetral(body: &ConvexBody, u: &Direction) -> Result<ConvexBody> {
    let n = body.dim();
    if u.dim() != n {
        return Err(Error::InvalidInput("direction dimension mismatch".into()));
    }
    let uv = u.as_vector();
    match body {
        ConvexBody::Ball(b) => Ok(ConvexBody::Ball(Ball {
            center: &b.center - uv * uv.dot(&b.center),
            radius: b.radius,
        })),
        ConvexBody::AffineImage(_) => Err(Error::UnsupportedKind(
            "affine images must be materialized to a polytope before symmetrization".into(),
        )),
        ConvexBody::VPolytope(p) => {
            if n > 3 {
                return Err(Error::UnsupportedDimension {
                    dim: n,
                    reason: "exact Steiner symmetrization needs facet structure".into(),
                });
            }
            let mut candidates: Vec<Vector> = p
                .vertices()
                .iter()
                .map(|v| v - uv * uv.dot(v))
                .collect();
            if n == 3 {
                candidates.extend(projected_edge_crossings(p, uv));
            }
            let mut pts = Vec::with_capacity(2 * candidates.len());
            for x in &candidates {
                if let Some((g, f)) = fiber_extent(body, u, x) {
                    let half = 0.5 * (f - g).max(0.0);
                    pts.push(x + uv * half);
                    pts.push(x - uv * half);
                }
            }
            ConvexBody::polytope(&pts)
        }
    }
}

fn projected_edge_crossings(p: &super::body::Polytope, u: &Vector) -> Vec<Vector> {
    let basis = complement_basis(u);
    let (e1, e2) = (&basis[0], &basis[1]);
    let planar: Vec<(f64, f64)> = p.vertices().iter().map(|v| (v.dot(e1), v.dot(e2))).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for f in p.facets() {
        let k = f.vertices.len();
        for i in 0..k {
            let (a, b) = (f.vertices[i], f.vertices[(i + 1) % k]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let scale = planar
        .iter()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (p0, p1, q0, q1) = (planar[a], planar[b], planar[c], planar[d]);
            let r = (p1.0 - p0.0, p1.1 - p0.1);
            let s = (q1.0 - q0.0, q1.1 - q0.1);
            let denom = r.0 * s.1 - r.1 * s.0;
            if denom.abs() <= 1e-12 * scale * scale {
                continue;
            }
            let w = (q0.0 - p0.0, q0.1 - p0.1);
            let t = (w.0 * s.1 - w.1 * s.0) / denom;
            let v = (w.0 * r.1 - w.1 * r.0) / denom;
            if t > 0.0 && t < 1.0 && v > 0.0 && v < 1.0 {
                let x = p0.0 + t * r.0;
                let y = p0.1 + t * r.1;
                out.push(e1 * x + e2 * y);
            }
        }
    }
    out
}
