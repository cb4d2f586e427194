//! Translating `K` along `u` until `u^⊥` `λ`-separates `(K − tu)°ᵖ`.
//!
//! `g(t)` is the share of `|(K−tu)°ᵖ|` on the positive side of `u^⊥`. On the
//! fiber `{t : tu ∈ int K} = (a, b)` it is finite, tends to 0 at `a` (the
//! negative side blows up) and to 1 at `b`, so a sign change of `g − λ` is
//! always bracketed.

use crate::error::{Error, Result};
use crate::geometry::{fiber_extent, ConvexBody, Direction};
use crate::lp_polar::{HalfVolume, LpSupportEvaluator, PExponent, PolarFunctional};
use crate::quadrature::QuadratureSpec;
use crate::Vector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeparationSearch {
    /// Stop once `|g(t) − λ| ≤ split_tol`.
    pub split_tol: f64,
    /// Relative width of the bracket below which the search stops.
    pub t_tol: f64,
    /// The fiber `(a, b)` is shrunk by `shrink·(b − a)` at both ends.
    pub shrink: f64,
    pub max_iter: usize,
}

impl Default for SeparationSearch {
    fn default() -> Self {
        Self {
            split_tol: 1e-8,
            t_tol: 1e-14,
            shrink: 1e-6,
            max_iter: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationResult {
    pub t: f64,
    /// `g(t)`.
    pub split: f64,
    /// The value actually matched: `λ`, or `1 − λ` when only the mirror was bracketed.
    pub target: f64,
    pub mirrored: bool,
    /// The fiber `(a, b)` of `K` along `u` through the origin.
    pub fiber: (f64, f64),
    /// `g` at the two shrunk endpoints.
    pub endpoint_splits: (f64, f64),
    pub evaluations: usize,
}

/// `g = |P ∩ {⟨y,u⟩ ≥ 0}| / |P|` for `P = (K − x)°ᵖ`; 0 or 1 when one side is infinite.
pub fn split_ratio(ev: &LpSupportEvaluator, x: &Vector, u: &Direction, spec: &QuadratureSpec) -> Result<f64> {
    let pf = PolarFunctional::new(ev, x.clone(), *spec);
    let (plus, minus) = pf.halfspace_volumes(u)?;
    match (plus, minus) {
        (HalfVolume::Finite { value: a, .. }, HalfVolume::Finite { value: b, .. }) => Ok(a / (a + b)),
        (HalfVolume::Finite { .. }, HalfVolume::Infinite) => Ok(0.0),
        (HalfVolume::Infinite, HalfVolume::Finite { .. }) => Ok(1.0),
        (HalfVolume::Infinite, HalfVolume::Infinite) => Err(Error::BracketFailure(
            "both half-volumes are infinite, the origin is not interior".into(),
        )),
    }
}

/// `t` with `u^⊥` `λ`-separating `(K − tu)°ᵖ`; requires `0 ∈ int K`.
pub fn separating_translation(
    body: &ConvexBody,
    p: PExponent,
    u: &Direction,
    lambda: f64,
    search: &SeparationSearch,
    spec: &QuadratureSpec,
) -> Result<SeparationResult> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidInput(format!("λ must lie in (0, 1), got {lambda}")));
    }
    let n = body.dim();
    if u.dim() != n {
        return Err(Error::InvalidInput("direction dimension mismatch".into()));
    }
    if !(body.interior_depth(&Vector::zeros(n)) > 0.0) {
        return Err(Error::NonIntegrable("the origin is not an interior point".into()));
    }
    let (a, b) = fiber_extent(body, u, &Vector::zeros(n))
        .ok_or_else(|| Error::BracketFailure("the line through the origin misses the body".into()))?;
    let ev = LpSupportEvaluator::new(body, p)?;
    let uv = u.as_vector();
    // g only has to be resolved to split_tol
    let mut coarse = *spec;
    coarse.angular_rel_tol = coarse.angular_rel_tol.max(search.split_tol);
    coarse.radial.rel_tol = coarse.radial.rel_tol.max(0.1 * search.split_tol);
    let mut evaluations = 0;
    let mut g = |t: f64| -> Result<f64> {
        evaluations += 1;
        split_ratio(&ev, &(uv * t), u, &coarse)
            .map_err(|e| Error::BracketFailure(format!("split at t = {t}: {e}")))
    };
    let delta = search.shrink * (b - a);
    let (mut lo, mut hi) = (a + delta, b - delta);
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    let target = if (g_lo - lambda) * (g_hi - lambda) <= 0.0 {
        lambda
    } else if (g_lo - (1.0 - lambda)) * (g_hi - (1.0 - lambda)) <= 0.0 {
        1.0 - lambda
    } else {
        return Err(Error::BracketFailure(format!(
            "g = {g_lo} and {g_hi} at the shrunk fiber ends do not bracket {lambda}"
        )));
    };
    let rising = g_hi >= g_lo;
    // Illinois false position, falling back to bisection when it stalls.
    let (mut f_lo, mut f_hi) = (g_lo - target, g_hi - target);
    let mut side = 0i8;
    let mut best = if f_lo.abs() < f_hi.abs() { (lo, g_lo) } else { (hi, g_hi) };
    for iter in 0..search.max_iter {
        if (best.1 - target).abs() <= search.split_tol || hi - lo <= search.t_tol * (b - a) {
            break;
        }
        let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        let t = if iter % 4 == 3 || !(secant > lo && secant < hi) {
            0.5 * (lo + hi)
        } else {
            secant
        };
        let gt = g(t)?;
        let ft = gt - target;
        if ft.abs() < (best.1 - target).abs() {
            best = (t, gt);
        }
        if (ft < 0.0) == rising {
            lo = t;
            f_lo = ft;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = t;
            f_hi = ft;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }
    Ok(SeparationResult {
        t: best.0,
        split: best.1,
        target,
        mirrored: target != lambda,
        fiber: (a, b),
        endpoint_splits: (g_lo, g_hi),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    #[test]
    fn symmetric_body_needs_no_translation() {
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let r = separating_translation(
            &sq,
            PExponent::Finite(1.0),
            &Direction::axis(2, 1),
            0.5,
            &SeparationSearch::default(),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(r.t.abs() < 1e-8, "{r:?}");
        assert!(r.endpoint_splits.0 < 1e-3 && r.endpoint_splits.1 > 1.0 - 1e-3);
    }

    #[test]
    fn triangle_split_is_verified_afterwards() {
        let tri = ConvexBody::polytope(&[v(&[-1.0, 1.0]), v(&[2.0, 1.0]), v(&[0.0, 2.0])])
            .unwrap()
            .translate(&v(&[-1.0 / 3.0, -4.0 / 3.0]));
        let u = Direction::axis(2, 1);
        let spec = QuadratureSpec::default();
        for (p, lambda) in [(PExponent::Finite(1.0), 0.5), (PExponent::Infinity, 0.3)] {
            let r = separating_translation(&tri, p, &u, lambda, &SeparationSearch::default(), &spec).unwrap();
            let ev = LpSupportEvaluator::new(&tri, p).unwrap();
            let g = split_ratio(&ev, &v(&[0.0, r.t]), &u, &spec).unwrap();
            assert!((g - lambda).abs() < 1e-6, "{p}: {r:?}");
        }
    }
}
