use super::body::{ConvexBody, Polytope};
use super::lp::{LinearProgram, LpOutcome};
use super::Direction;
use crate::Vector;

/// Orthonormal basis of the orthogonal complement of the unit vector `d`.
pub(crate) fn complement_basis(d: &Vector) -> Vec<Vector> {
    let n = d.len();
    let mut basis: Vec<Vector> = Vec::with_capacity(n.saturating_sub(1));
    // Start from the standard basis, skipping the axis most aligned with d.
    let skip = d.iamax();
    for i in (0..n).filter(|&i| i != skip) {
        let mut w = Vector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
        w -= d * d.dot(&w);
        for b in &basis {
            w -= b * b.dot(&w);
        }
        // Second pass for numerical orthogonality.
        w -= d * d.dot(&w);
        for b in &basis {
            w -= b * b.dot(&w);
        }
        basis.push(w.normalize());
    }
    basis
}

/// Parameter range `{t : point + t·dir ∈ K}` or `None` when the line misses `K`.
/// `dir` need not be a unit vector.
pub fn line_extent(body: &ConvexBody, point: &Vector, dir: &Vector) -> Option<(f64, f64)> {
    match body {
        ConvexBody::VPolytope(p) => polytope_line_extent(p, point, dir),
        ConvexBody::Ball(b) => {
            let w = point - &b.center;
            let a = dir.norm_squared();
            let half_b = w.dot(dir);
            let c = w.norm_squared() - b.radius * b.radius;
            let disc = half_b * half_b - a * c;
            if disc < 0.0 {
                return None;
            }
            let s = disc.sqrt();
            // Stable roots of a t² + 2 half_b t + c.
            let q = -(half_b + half_b.signum() * s);
            let (t1, t2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
            Some((t1.min(t2), t1.max(t2)))
        }
        ConvexBody::AffineImage(a) => {
            line_extent(a.base(), &a.pull_back(point), &(a.inverse() * dir))
        }
    }
}

fn polytope_line_extent(p: &Polytope, point: &Vector, dir: &Vector) -> Option<(f64, f64)> {
    let len2 = dir.norm_squared();
    let unit = dir / len2.sqrt();
    let basis = complement_basis(&unit);
    let rel: Vec<Vector> = p.vertices().iter().map(|v| v - point).collect();
    let mut rows: Vec<Vec<f64>> = basis
        .iter()
        .map(|w| rel.iter().map(|r| r.dot(w)).collect())
        .collect();
    rows.push(vec![1.0; rel.len()]);
    let mut rhs = vec![0.0; basis.len()];
    rhs.push(1.0);
    let cost: Vec<f64> = rel.iter().map(|r| r.dot(dir) / len2).collect();
    let lp = LinearProgram::new(rows, rhs, cost);
    let hi = match lp.maximize() {
        LpOutcome::Optimal { value, .. } => value,
        _ => return None,
    };
    let lo = match lp.minimize() {
        LpOutcome::Optimal { value, .. } => value,
        _ => return None,
    };
    Some((lo, hi))
}

/// `(g, f)` with `g = min{t : x + t u ∈ K}` and `f = max{t : x + t u ∈ K}`,
/// or `None` when `x` is outside the projection of `K` onto `u^⊥`.
pub fn fiber_extent(body: &ConvexBody, u: &Direction, x: &Vector) -> Option<(f64, f64)> {
    line_extent(body, x, u.as_vector())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    #[test]
    fn complement_basis_is_orthonormal() {
        let d = v(&[0.3, -0.5, 0.8]).normalize();
        let b = complement_basis(&d);
        assert_eq!(b.len(), 2);
        for (i, w) in b.iter().enumerate() {
            assert!(w.dot(&d).abs() < 1e-15);
            assert!((w.norm() - 1.0).abs() < 1e-15);
            for z in &b[i + 1..] {
                assert!(w.dot(z).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ball_chord() {
        let b = ConvexBody::unit_ball(2);
        let (g, f) = line_extent(&b, &v(&[0.0, 0.6]), &v(&[1.0, 0.0])).unwrap();
        assert!((g + 0.8).abs() < 1e-15 && (f - 0.8).abs() < 1e-15);
        assert!(line_extent(&b, &v(&[0.0, 1.5]), &v(&[1.0, 0.0])).is_none());
    }

    #[test]
    fn non_unit_direction_scales_parameter() {
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let (g, f) = line_extent(&sq, &v(&[0.0, 0.0]), &v(&[2.0, 0.0])).unwrap();
        assert!((g + 0.5).abs() < 1e-12 && (f - 0.5).abs() < 1e-12);
    }
}
