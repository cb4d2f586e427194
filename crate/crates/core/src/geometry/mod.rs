//! Convex bodies (V-polytopes, balls, affine images), exact volumes and
//! barycenters, fibers along lines, Steiner symmetrization.

mod body;
mod fiber;
pub mod hull;
pub mod lp;
mod simplex;
mod split;
mod steiner;

pub use body::{unit_ball_volume, AffineImage, Ball, BodySpec, ConvexBody, Polytope};
pub use fiber::{fiber_extent, line_extent};
pub use hull::Facet;
pub use simplex::{signed_volume, Simplex};
pub use split::{halfspace_split_volume, split_volume};
pub use steiner::steiner_symmetral;

pub(crate) use fiber::complement_basis;
pub(crate) use simplex::factorial;

use crate::error::{Error, Result};
use crate::{Matrix, Vector};
use serde::{Deserialize, Serialize};

/// Unit vector `u`; it names the hyperplane `u^⊥` and the half-space
/// `{⟨x,u⟩ ≥ 0}` (the "plus" side).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Direction(Vector);

impl Direction {
    pub fn new(v: Vector) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidInput("direction must be a nonzero finite vector".into()));
        }
        Ok(Self(v / norm))
    }

    /// The coordinate direction `e_i` in `R^n`.
    pub fn axis(n: usize, i: usize) -> Self {
        Self(Vector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 }))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    /// Same hyperplane, half-space labels swapped.
    pub fn flipped(&self) -> Self {
        Self(-&self.0)
    }

    /// Orthogonal projection onto `u^⊥`.
    pub fn project(&self, x: &Vector) -> Vector {
        x - &self.0 * self.0.dot(x)
    }

    /// Reflection across `u^⊥`.
    pub fn reflect(&self, x: &Vector) -> Vector {
        x - &self.0 * (2.0 * self.0.dot(x))
    }
}

impl TryFrom<Vec<f64>> for Direction {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(Vector::from_vec(v))
    }
}

impl From<Direction> for Vec<f64> {
    fn from(d: Direction) -> Self {
        d.0.iter().cloned().collect()
    }
}

pub fn volume(body: &ConvexBody) -> Result<f64> {
    body.volume()
}

pub fn barycenter(body: &ConvexBody) -> Result<Vector> {
    body.barycenter()
}

pub fn triangulate(body: &ConvexBody) -> Result<Vec<Simplex>> {
    match body {
        ConvexBody::VPolytope(p) => Ok(p.simplices()?.to_vec()),
        _ => Err(Error::UnsupportedKind(format!(
            "only polytopes can be triangulated, got {}",
            body.kind_name()
        ))),
    }
}

/// The image of `K` under `x ↦ A x + shift`.
///
/// A ball stays a ball under scaled orthogonal maps; any other map of a ball
/// is rejected rather than silently approximated.
pub fn transform(body: &ConvexBody, a: &Matrix, shift: &Vector) -> Result<ConvexBody> {
    let n = body.dim();
    if a.nrows() != n || a.ncols() != n || shift.len() != n {
        return Err(Error::InvalidInput("affine map dimension mismatch".into()));
    }
    body::check_invertible(a)?;
    match body {
        ConvexBody::VPolytope(p) => {
            let pts: Vec<Vector> = p.vertices().iter().map(|v| a * v + shift).collect();
            ConvexBody::polytope(&pts)
        }
        ConvexBody::Ball(b) => {
            let gram = a.transpose() * a;
            let s2 = gram.trace() / n as f64;
            let off = (&gram - Matrix::identity(n, n) * s2).amax();
            if off > 1e-10 * s2 {
                return Err(Error::BallNonOrthogonal);
            }
            ConvexBody::ball(a * &b.center + shift, b.radius * s2.sqrt())
        }
        ConvexBody::AffineImage(img) => ConvexBody::affine_image(
            img.base().clone(),
            a * img.matrix(),
            a * img.shift() + shift,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    fn triangle() -> ConvexBody {
        ConvexBody::polytope_from_rows(&[vec![-1.0, 1.0], vec![2.0, 1.0], vec![0.0, 2.0]]).unwrap()
    }

    fn square() -> ConvexBody {
        ConvexBody::cube(2, 1.0).unwrap()
    }

    #[test]
    fn volumes() {
        assert!((volume(&square()).unwrap() - 4.0).abs() < 1e-14);
        assert!((volume(&triangle()).unwrap() - 1.5).abs() < 1e-14);
        assert!((volume(&ConvexBody::unit_ball(2)).unwrap() - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn barycenters() {
        assert!(barycenter(&square()).unwrap().norm() < 1e-15);
        let unit = ConvexBody::polytope_from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((barycenter(&unit).unwrap() - v(&[1.0 / 3.0, 1.0 / 3.0])).norm() < 1e-15);
        assert!((barycenter(&triangle()).unwrap() - v(&[1.0 / 3.0, 4.0 / 3.0])).norm() < 1e-14);
    }

    #[test]
    fn triangulation_counts() {
        let unit = ConvexBody::polytope_from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(triangulate(&unit).unwrap().len(), 1);
        let pieces = triangulate(&square()).unwrap();
        assert_eq!(pieces.len(), 2);
        let total: f64 = pieces.iter().map(Simplex::volume).sum();
        assert!((total - 4.0).abs() < 1e-14);
        let cube = ConvexBody::cube(3, 1.0).unwrap();
        let total: f64 = triangulate(&cube).unwrap().iter().map(Simplex::volume).sum();
        assert!((total - 8.0).abs() < 1e-13);
    }

    #[test]
    fn second_moment_of_ball_and_square() {
        // ∫_{[-1,1]²} x² = 4/3.
        let m = square().second_moment().unwrap();
        assert!((m[(0, 0)] - 4.0 / 3.0).abs() < 1e-14 && m[(0, 1)].abs() < 1e-14);
        // ∫_{unit disk} x² = π/4.
        let m = ConvexBody::unit_ball(2).second_moment().unwrap();
        assert!((m[(0, 0)] - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn fiber_examples() {
        let (g, f) = fiber_extent(&square(), &Direction::axis(2, 1), &v(&[0.5, 0.0])).unwrap();
        assert!((g + 1.0).abs() < 1e-12 && (f - 1.0).abs() < 1e-12);
        let (g, f) = fiber_extent(&triangle(), &Direction::axis(2, 1), &v(&[0.0, 0.0])).unwrap();
        assert!((g - 1.0).abs() < 1e-12 && (f - 2.0).abs() < 1e-12);
        let (g, f) = fiber_extent(&ConvexBody::unit_ball(2), &Direction::axis(2, 0), &v(&[0.0, 0.6])).unwrap();
        assert!((g + 0.8).abs() < 1e-14 && (f - 0.8).abs() < 1e-14);
        assert!(fiber_extent(&square(), &Direction::axis(2, 1), &v(&[1.5, 0.0])).is_none());
    }

    #[test]
    fn steiner_of_triangle() {
        let s = steiner_symmetral(&triangle(), &Direction::axis(2, 1)).unwrap();
        let expected = ConvexBody::polytope_from_rows(&[
            vec![-1.0, 0.0],
            vec![0.0, 0.5],
            vec![2.0, 0.0],
            vec![0.0, -0.5],
        ])
        .unwrap();
        assert!(s.approx_eq(&expected, 1e-12));
        assert!((volume(&s).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn steiner_ignores_translation_along_u() {
        let shifted = square().translate(&v(&[0.0, 5.0]));
        let s = steiner_symmetral(&shifted, &Direction::axis(2, 1)).unwrap();
        assert!(s.approx_eq(&square(), 1e-12));
        let s = steiner_symmetral(&square(), &Direction::axis(2, 0)).unwrap();
        assert!(s.approx_eq(&square(), 1e-12));
    }

    #[test]
    fn steiner_of_ball_and_affine() {
        let b = ConvexBody::ball(v(&[1.0, 2.0]), 0.5).unwrap();
        match steiner_symmetral(&b, &Direction::axis(2, 1)).unwrap() {
            ConvexBody::Ball(s) => assert!((s.center - v(&[1.0, 0.0])).norm() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let e = ConvexBody::affine_image(
            ConvexBody::unit_ball(2),
            Matrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.0]),
            v(&[0.0, 0.0]),
        )
        .unwrap();
        assert!(matches!(
            steiner_symmetral(&e, &Direction::axis(2, 0)),
            Err(Error::UnsupportedKind(_))
        ));
    }

    #[test]
    fn steiner_in_space_preserves_volume() {
        // An irregular tetrahedron plus a point: projected edges cross.
        let k = ConvexBody::polytope_from_rows(&[
            vec![0.0, 0.0, 0.0],
            vec![2.0, 0.1, 0.3],
            vec![0.2, 1.7, -0.4],
            vec![0.5, 0.4, 2.1],
            vec![1.4, 1.3, 1.2],
        ])
        .unwrap();
        for u in [v(&[0.0, 0.0, 1.0]), v(&[0.3, -0.4, 0.8]), v(&[1.0, 1.0, 0.0])] {
            let d = Direction::new(u).unwrap();
            let s = steiner_symmetral(&k, &d).unwrap();
            let rel = (volume(&s).unwrap() - volume(&k).unwrap()).abs() / volume(&k).unwrap();
            assert!(rel < 1e-9, "relative volume change {rel}");
        }
    }

    #[test]
    fn transform_examples() {
        let id = Matrix::identity(2, 2);
        let t = transform(&square(), &id, &v(&[1.0, 0.0])).unwrap();
        let expected = ConvexBody::polytope_from_rows(&[
            vec![0.0, -1.0],
            vec![2.0, -1.0],
            vec![2.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        assert!(t.approx_eq(&expected, 1e-14));
        let rot = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert!(transform(&square(), &rot, &v(&[0.0, 0.0])).unwrap().approx_eq(&square(), 1e-14));
        let stretch = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let unit = ConvexBody::cube(2, 0.5).unwrap();
        let img = transform(&unit, &stretch, &v(&[0.0, 0.0])).unwrap();
        assert!((volume(&img).unwrap() - 2.0).abs() < 1e-14);
        assert!(matches!(
            transform(&ConvexBody::unit_ball(2), &stretch, &v(&[0.0, 0.0])),
            Err(Error::BallNonOrthogonal)
        ));
        let singular = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            transform(&square(), &singular, &v(&[0.0, 0.0])),
            Err(Error::NonInvertible { .. })
        ));
        let scaled_rot = rot * 3.0;
        match transform(&ConvexBody::unit_ball(2), &scaled_rot, &v(&[1.0, 1.0])).unwrap() {
            ConvexBody::Ball(b) => assert!((b.radius - 3.0).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_examples() {
        let (p, m) = halfspace_split_volume(&square(), &Direction::axis(2, 1)).unwrap();
        assert!((p - 2.0).abs() < 1e-14 && (m - 2.0).abs() < 1e-14);
        let (p, m) = halfspace_split_volume(&triangle(), &Direction::axis(2, 1)).unwrap();
        assert!((p - 1.5).abs() < 1e-14 && m.abs() < 1e-14);
        // Flipping the direction swaps the labels.
        let (p2, m2) = halfspace_split_volume(&triangle(), &Direction::axis(2, 1).flipped()).unwrap();
        assert_eq!((p2, m2), (m, p));
        let (p, m) = halfspace_split_volume(&ConvexBody::unit_ball(3), &Direction::axis(3, 2)).unwrap();
        assert!((p - m).abs() < 1e-14);
        let b = ConvexBody::ball(v(&[0.0, 0.5]), 1.0).unwrap();
        let (p, m) = halfspace_split_volume(&b, &Direction::axis(2, 1)).unwrap();
        // Segment of the unit disk beyond distance 1/2: π/3 − √3/4.
        assert!((m - (PI / 3.0 - 3f64.sqrt() / 4.0)).abs() < 1e-14);
        assert!((p + m - PI).abs() < 1e-14);
    }

    #[test]
    fn affine_image_queries() {
        let a = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.0]);
        let e = ConvexBody::affine_image(ConvexBody::unit_ball(2), a.clone(), v(&[1.0, 0.0])).unwrap();
        assert!((volume(&e).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((barycenter(&e).unwrap() - v(&[1.0, 0.0])).norm() < 1e-15);
        // Support of the image equals the max over a dense boundary sample.
        let y = v(&[0.3, -1.1]);
        let sampled = (0..20000)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 20000.0;
                (&a * v(&[t.cos(), t.sin()]) + v(&[1.0, 0.0])).dot(&y)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((e.support(&y) - sampled).abs() < 1e-6);
        let (p, m) = halfspace_split_volume(&e, &Direction::axis(2, 0)).unwrap();
        assert!((p + m - 2.0 * PI).abs() < 1e-12);
        let poly = e.materialize(256).unwrap();
        assert!((volume(&poly).unwrap() - 2.0 * PI).abs() < 2e-3 * 2.0 * PI);
    }

    #[test]
    fn json_round_trip() {
        let body: ConvexBody =
            serde_json::from_str(r#"{"kind":"vpolytope","vertices":[[0,0],[1,0],[0,1],[0.2,0.2]]}"#).unwrap();
        assert_eq!(body.as_polytope().unwrap().vertices().len(), 3);
        let back: ConvexBody = serde_json::from_str(&serde_json::to_string(&body).unwrap()).unwrap();
        assert!(back.approx_eq(&body, 0.0));
        let ball: ConvexBody = serde_json::from_str(r#"{"kind":"ball","center":[0,0,0],"radius":2}"#).unwrap();
        assert_eq!(ball.dim(), 3);
        assert!(serde_json::from_str::<ConvexBody>(r#"{"kind":"ball","center":[0],"radius":-1}"#).is_err());
        assert!(serde_json::from_str::<ConvexBody>(r#"{"kind":"vpolytope","vertices":[[0,0],[1,1]]}"#).is_err());
        let aff: ConvexBody = serde_json::from_str(
            r#"{"kind":"affine","base":{"kind":"ball","center":[0,0],"radius":1},"matrix":[[2,0],[0,1]],"shift":[0,0]}"#,
        )
        .unwrap();
        assert!((volume(&aff).unwrap() - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn direction_normalizes() {
        let d = Direction::new(v(&[3.0, 4.0])).unwrap();
        assert!((d.as_vector().norm() - 1.0).abs() < 1e-15);
        assert!(Direction::new(v(&[0.0, 0.0])).is_err());
        let x = v(&[1.0, 2.0]);
        assert!((d.reflect(&d.reflect(&x)) - &x).norm() < 1e-15);
        assert!(d.project(&x).dot(d.as_vector()).abs() < 1e-15);
    }
}
