//! Seeded random convex polygons used by the verification batches.

use crate::error::Result;
use crate::geometry::ConvexBody;
use crate::{Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MIN_VERTICES: usize = 5;
pub const MAX_VERTICES: usize = 12;

/// Hull of a random point cloud in the unit disk with 5–12 vertices, mapped
/// by a random linear map (singular values in `[0.5, 2]`) and shifted by up
/// to 0.5 in each coordinate.
pub fn random_hull(rng: &mut impl Rng) -> Result<ConvexBody> {
    loop {
        let m = rng.random_range(8..40);
        let pts: Vec<Vector> = (0..m)
            .map(|_| {
                let r = rng.random::<f64>().sqrt();
                let a = rng.random_range(0.0..std::f64::consts::TAU);
                Vector::from_vec(vec![r * a.cos(), r * a.sin()])
            })
            .collect();
        let hull = ConvexBody::polytope(&pts)?;
        let k = hull.as_polytope().map_or(0, |p| p.vertices().len());
        if !(MIN_VERTICES..=MAX_VERTICES).contains(&k) {
            continue;
        }
        let rot = |t: f64| Matrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        let scale = Matrix::from_diagonal(&Vector::from_vec(vec![
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
        ]));
        let a = rot(rng.random_range(0.0..std::f64::consts::PI)) * scale * rot(rng.random_range(0.0..std::f64::consts::PI));
        let shift = Vector::from_vec(vec![rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)]);
        return crate::geometry::transform(&hull, &a, &shift);
    }
}

/// `count` random hulls from `seed`.
pub fn random_hulls(seed: u64, count: usize) -> Result<Vec<ConvexBody>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_hull(&mut rng)).collect()
}

/// Bodies symmetric about the origin: square, regular hexagon, disk and a
/// rotated rectangle.
pub fn symmetric_bodies() -> Result<Vec<ConvexBody>> {
    let t = 0.4f64;
    let rect = ConvexBody::polytope_from_rows(&[
        vec![1.5, 0.5],
        vec![-1.5, 0.5],
        vec![-1.5, -0.5],
        vec![1.5, -0.5],
    ])?;
    let rot = Matrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
    Ok(vec![
        ConvexBody::cube(2, 1.0)?,
        ConvexBody::regular_polygon(6, 1.0)?,
        ConvexBody::unit_ball(2),
        crate::geometry::transform(&rect, &rot, &Vector::zeros(2))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hulls_are_reproducible_and_in_range() {
        let a = random_hulls(11, 25).unwrap();
        let b = random_hulls(11, 25).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.approx_eq(y, 0.0));
            let k = x.as_polytope().unwrap().vertices().len();
            assert!((MIN_VERTICES..=MAX_VERTICES).contains(&k));
            assert!(x.volume().unwrap() > 0.0);
        }
    }
}
