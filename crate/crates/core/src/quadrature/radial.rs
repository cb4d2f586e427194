//! Moments `∫_0^∞ r^{q-1} e^{-ψ(r)} dr` of a convex exponent `ψ`.
//!
//! The range is covered by geometric panels `[0, L], [L, 2L], [2L, 4L], …`
//! until the tail beyond the current end `R` is provably small. Convexity of
//! `ψ` gives `ψ(r) ≥ ψ(R) + s (r − R)` for `r ≥ R`, where `s` is the secant
//! slope over `[R/2, R]`, hence
//! `∫_R^∞ r^m e^{-ψ} ≤ e^{-ψ(R)} Σ_{j≤m} m!/(m−j)! · R^{m−j} / s^{j+1}`.
//! If the slope never becomes positive the integral diverges.

use super::gauss_kronrod::{Adaptive, AdaptiveOptions};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Panel doublings allowed before the integral is declared divergent.
    pub max_doublings: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-300,
            max_subdivisions: 200,
            max_doublings: 80,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEstimate<const M: usize> {
    pub value: [f64; M],
    /// Quadrature error plus the tail bound.
    pub error: [f64; M],
    pub tail_bound: [f64; M],
    pub end: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Upper bound for `∫_R^∞ r^m e^{-(psi_r + s (r − R))} dr`.
fn tail_bound(m: u32, r: f64, psi_r: f64, s: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // m! / (m − j)!
    for j in 0..=m {
        if j > 0 {
            coeff *= (m - j + 1) as f64;
        }
        sum += coeff * r.powi((m - j) as i32) / s.powi(j as i32 + 1);
    }
    (-psi_r).exp() * sum
}

/// Computes `∫_0^∞ r^{q_k − 1} e^{−ψ(r)} dr` for each exponent `q_k ≥ 1`.
///
/// `scale` is the length of the first panel, ideally the radius at which `ψ`
/// has grown by about one.
pub fn radial_moments<const M: usize, F>(
    mut psi: F,
    q: [u32; M],
    scale: f64,
    opts: &RadialOptions,
) -> Result<RadialEstimate<M>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if q.iter().any(|&k| k == 0) {
        return Err(Error::InvalidInput("radial exponents must be at least 1".into()));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::InvalidInput(format!("radial scale must be positive, got {scale}")));
    }
    let gk = AdaptiveOptions {
        rel_tol: opts.rel_tol,
        abs_tol: opts.abs_tol,
        max_subdivisions: opts.max_subdivisions,
    };
    let mut ad = Adaptive::<M>::new(gk);
    let mut start = 0.0;
    let mut end = scale;
    let mut tails = None;
    let mut extra_evals = 0;
    for _ in 0..opts.max_doublings {
        ad.add_interval(&mut |r| Ok(weights(&q, r, psi(r)?)), start, end)?;
        let totals = ad.totals();
        let psi_end = psi(end)?;
        let psi_mid = psi(0.5 * end)?;
        extra_evals += 2;
        let slope = (psi_end - psi_mid) / (0.5 * end);
        if slope > 0.0 && psi_end.is_finite() {
            let mut t = [0.0; M];
            for k in 0..M {
                t[k] = tail_bound(q[k] - 1, end, psi_end, slope);
            }
            let small = (0..M).all(|k| {
                t[k] <= 0.01 * opts.abs_tol.max(opts.rel_tol * totals.magnitude[k])
            });
            if small {
                tails = Some(t);
                break;
            }
        } else if psi_end == f64::INFINITY {
            // Integrand vanished identically beyond this point.
            tails = Some([0.0; M]);
            break;
        }
        start = end;
        end *= 2.0;
    }
    let Some(tail) = tails else {
        return Err(Error::NonIntegrable(format!(
            "exponent does not grow along the ray (checked up to r = {end:e})"
        )));
    };
    let est = ad.refine(&mut |r| Ok(weights(&q, r, psi(r)?)))?;
    let mut error = est.error;
    for k in 0..M {
        error[k] += tail[k];
    }
    Ok(RadialEstimate {
        value: est.value,
        error,
        tail_bound: tail,
        end,
        evaluations: est.evaluations + extra_evals,
        converged: est.converged,
    })
}

fn weights<const M: usize>(q: &[u32; M], r: f64, psi: f64) -> [f64; M] {
    let w = (-psi).exp();
    let mut out = [0.0; M];
    for k in 0..M {
        out[k] = if q[k] == 1 { w } else { r.powi(q[k] as i32 - 1) * w };
    }
    out
}

/// Scalar form: `∫_0^∞ r^{q−1} e^{−ψ(r)} dr` with its error bound.
pub fn radial_integral<F>(psi: F, q: u32, scale: f64, opts: &RadialOptions) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let est = radial_moments(psi, [q], scale, opts)?;
    Ok((est.value[0], est.error[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        let opts = RadialOptions::default();
        let (v, e) = radial_integral(|r| Ok(r), 2, 1.0, &opts).unwrap();
        assert!((v - 1.0).abs() < 1e-12 && e < 1e-9);
        let (v, _) = radial_integral(|r| Ok(r), 3, 1.0, &opts).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let est = radial_moments(|r| Ok(2.0 * r), [1, 2, 3], 0.5, &opts).unwrap();
        for (k, exact) in [0.5, 0.25, 0.25].iter().enumerate() {
            assert!((est.value[k] - exact).abs() < 1e-13);
            assert!(est.error[k] >= (est.value[k] - exact).abs());
        }
    }

    #[test]
    fn poor_scale_hint_still_converges() {
        let opts = RadialOptions::default();
        let (v, _) = radial_integral(|r| Ok(r * r), 1, 1e-3, &opts).unwrap();
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
        let (v, _) = radial_integral(|r| Ok(r), 1, 1e3, &opts).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn divergence_detected() {
        let opts = RadialOptions::default();
        let r = radial_integral(|r| Ok(-0.1 * r), 1, 1.0, &opts);
        assert!(matches!(r, Err(Error::NonIntegrable(_))));
        let r = radial_integral(|r| Ok((1.0 + r).ln() * 0.5), 1, 1.0, &opts);
        assert!(matches!(r, Err(Error::NonIntegrable(_))));
    }
}
