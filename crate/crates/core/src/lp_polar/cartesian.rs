//! `∫_{R²} e^{−φ}` by iterated integration in Cartesian coordinates.
//!
//! This discretization shares nothing with the polar one besides `φ`, so it
//! serves as an independent check on `V(φ)`. The inner integral runs along
//! lines `y₂ = s`, where `φ(·, s)` is convex; the outer integrand
//! `G(s) = ∫ e^{−φ(t, s)} dt` is log-concave (Prékopa), so both levels reuse
//! the convex-tail radial integrator on the two half-lines.

use super::polar::PolarFunctional;
use crate::error::{Error, Result};
use crate::quadrature::radial_moments;
use crate::Vector;
use std::cell::Cell;

pub fn cartesian_volume(pf: &PolarFunctional) -> Result<(f64, f64)> {
    let n = pf.dim();
    let opts = pf.spec().radial;
    if n == 1 {
        let plus = pf.directional(&Vector::from_element(1, 1.0))?;
        let minus = pf.directional(&Vector::from_element(1, -1.0))?;
        return Ok((plus.value[0] + minus.value[0], plus.error[0] + minus.error[0]));
    }
    if n != 2 {
        return Err(Error::UnsupportedDimension {
            dim: n,
            reason: "the Cartesian cross-check is planar".into(),
        });
    }
    let scale = |v: [f64; 2]| -> Result<f64> {
        let h = pf.support_inf(&Vector::from_vec(v.to_vec()));
        if h > 0.0 {
            Ok(1.0 / h)
        } else {
            Err(Error::NonIntegrable("origin is not interior".into()))
        }
    };
    let (sx_plus, sx_minus) = (scale([1.0, 0.0])?, scale([-1.0, 0.0])?);
    let (sy_plus, sy_minus) = (scale([0.0, 1.0])?, scale([0.0, -1.0])?);
    let worst_inner = Cell::new(0.0f64);

    // −log G(s)
    let neg_log_g = |s: f64| -> Result<f64> {
        let mut y = Vector::from_vec(vec![0.0, s]);
        let base = pf.phi(&y);
        let mut half = |sign: f64, sc: f64| {
            radial_moments(
                |t| {
                    y[0] = sign * t;
                    Ok(pf.phi(&y) - base)
                },
                [1],
                sc,
                &opts,
            )
        };
        let a = half(1.0, sx_plus)?;
        let b = half(-1.0, sx_minus)?;
        let total = a.value[0] + b.value[0];
        worst_inner.set(worst_inner.get().max((a.error[0] + b.error[0]) / total));
        Ok(base - total.ln())
    };
    let g0 = neg_log_g(0.0)?;
    let outer = |sign: f64, sc: f64| radial_moments(|s| Ok(neg_log_g(sign * s)? - g0), [1], sc, &opts);
    let up = outer(1.0, sy_plus)?;
    let down = outer(-1.0, sy_minus)?;
    let factor = (-g0).exp();
    let v = factor * (up.value[0] + down.value[0]);
    let err = factor * (up.error[0] + down.error[0]) + worst_inner.get() * v;
    Ok((v, err))
}
