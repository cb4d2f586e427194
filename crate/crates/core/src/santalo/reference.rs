//! `M_p(B₂ⁿ)` and the Bergman-kernel bound for tube domains.

use super::solver::{santalo_point, SantaloSolveOptions};
use crate::error::{Error, Result};
use crate::geometry::{factorial, unit_ball_volume, ConvexBody};
use crate::lp_polar::special::log_ball_average;
use crate::lp_polar::PExponent;
use crate::quadrature::{radial_integral, QuadratureSpec};
use crate::Vector;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `M_p(B₂ⁿ)` with its error estimate.
///
/// `h_{p,B}` is radial, so `∫ e^{−h_{p,B}} = n κ_n ∫_0^∞ r^{n−1} e^{−h(r)} dr`;
/// for `p = ∞` the value is `n! κ_n²`.
pub fn ball_reference_with_error(n: usize, p: PExponent, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let kappa = unit_ball_volume(n);
    match p {
        PExponent::Infinity => Ok((factorial(n) * kappa * kappa, 0.0)),
        PExponent::Finite(p) => {
            let (i, err) = radial_integral(|r| Ok(log_ball_average(n, p * r) / p), n as u32, 1.0, &spec.radial)?;
            let c = n as f64 * kappa * kappa;
            Ok((c * i, c * err))
        }
    }
}

pub fn ball_reference(n: usize, p: PExponent, spec: &QuadratureSpec) -> Result<f64> {
    Ok(ball_reference_with_error(n, p, spec)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BergmanBound {
    /// `s₁(K)`.
    pub point: Vec<f64>,
    /// `M₁(B₂ⁿ) / ((4π)ⁿ |K|²)`.
    pub bound: f64,
}

/// Evaluation point and constant of the diagonal Bergman-kernel bound on the
/// tube domain over `K`.
pub fn bergman_bound(body: &ConvexBody, opts: &SantaloSolveOptions) -> Result<BergmanBound> {
    let n = body.dim();
    let s1 = santalo_point(body, PExponent::Finite(1.0), opts)?.require_converged()?;
    let vol = body.volume()?;
    let m1 = ball_reference(n, PExponent::Finite(1.0), &opts.quadrature)?;
    Ok(BergmanBound {
        point: s1.point.iter().copied().collect(),
        bound: m1 / ((4.0 * PI).powi(n as i32) * vol * vol),
    })
}

/// Checks the closed form against the generic pipeline on the ball itself.
pub fn ball_reference_generic(n: usize, p: PExponent, spec: &QuadratureSpec) -> Result<f64> {
    let ball = ConvexBody::unit_ball(n);
    Ok(crate::lp_polar::mahler_volume(&ball, p, &Vector::zeros(n), spec)?.value())
}
