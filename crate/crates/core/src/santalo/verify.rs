//! Numerical checks of the inequalities behind the Lp-Santaló inequality.
//!
//! Each check returns a [`VerificationReport`] whose `slack` is non-negative
//! when the inequality holds. Checks on `K°ᵖ` need `0 ∈ int K`; checks that
//! symmetrize do so along the last coordinate axis `e_n`, with `ξ ∈ R^{n−1}`
//! the remaining coordinates.

use super::pipeline::{steiner_pipeline, symmetrizable};
use super::reference::ball_reference_with_error;
use super::report::{Check, ReportInputs, VerificationReport};
use super::solver::{santalo_point, SantaloSolution, SantaloSolveOptions};
use crate::error::{Error, Result};
use crate::geometry::{steiner_symmetral, ConvexBody, Direction};
use crate::lp_polar::{mahler_volume, LpSupportEvaluator, MahlerVolume, MomentRoute, PExponent, PolarFunctional};
use crate::quadrature::{radial_integral, QuadratureSpec};
use crate::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Allowed violation of the two-point support-function inequality.
pub const SUPPORT_TOLERANCE: f64 = 1e-7;
/// Allowed relative violation of the norm and radial-moment inequalities.
pub const NORM_TOLERANCE: f64 = 1e-7;
/// Allowed second difference below zero in the sinh convexity check.
pub const CONVEXITY_TOLERANCE: f64 = 1e-9;
/// Relative agreement of two computations of the same number.
pub const IDENTITY_TOLERANCE: f64 = 1e-5;
/// Relative slack for `M_p(K − s_p) ≤ M_p(B)`, covering equality for ellipsoids.
pub const MAIN_THEOREM_TOLERANCE: f64 = 1e-6;
/// Relative decrease allowed between consecutive pipeline steps.
pub const PIPELINE_TOLERANCE: f64 = 1e-5;

fn require_interior(body: &ConvexBody) -> Result<()> {
    if body.interior_depth(&Vector::zeros(body.dim())) > 0.0 {
        Ok(())
    } else {
        Err(Error::NonIntegrable("the check needs the origin in the interior".into()))
    }
}

fn last_axis(n: usize) -> Direction {
    Direction::axis(n, n - 1)
}

fn join(xi: &[f64], last: f64) -> Vector {
    let mut v: Vec<f64> = xi.to_vec();
    v.push(last);
    Vector::from_vec(v)
}

/// `|(σ_u K)°ᵖ| ≥ 4λ(1−λ)|K°ᵖ|` with `λ` the measured share of `K°ᵖ` on the
/// positive side of `u^⊥`.
pub fn verify_volume_lemma(
    body: &ConvexBody,
    p: PExponent,
    u: &Direction,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let body = symmetrizable(body)?;
    require_interior(&body)?;
    let n = body.dim();
    let ev = LpSupportEvaluator::new(&body, p)?;
    let pf = PolarFunctional::new(&ev, Vector::zeros(n), *spec);
    let (plus, minus) = pf.halfspace_volumes(u)?;
    if !(plus.is_finite() && minus.is_finite()) {
        return Err(Error::NonIntegrable("a half of the polar body is unbounded".into()));
    }
    let total = plus.value() + minus.value();
    let lambda = plus.value() / total;
    let sym = steiner_symmetral(&body, u)?;
    let ev_sym = LpSupportEvaluator::new(&sym, p)?;
    let pv_sym = PolarFunctional::new(&ev_sym, Vector::zeros(n), *spec).polar_volume()?;
    let rhs_bound = 4.0 * lambda * (1.0 - lambda) * total;
    let err = pv_sym.error / pv_sym.value + 2.0 * (plus.error() + minus.error()) / total;
    let mut inputs = ReportInputs::body(&body, p);
    inputs.u = Some(u.as_vector().iter().copied().collect());
    inputs.lambda = Some(lambda);
    Ok(VerificationReport::new(
        Check::VolumeLemma,
        inputs,
        rhs_bound,
        pv_sym.value,
        (pv_sym.value - rhs_bound) / rhs_bound,
        err,
        0.0,
        1,
    )
    .with_quadrature(spec))
}

/// Length of the convex sublevel set `{ξ : f(ξ) ≤ 1}` of a convex function on `R`.
fn sublevel_length(mut f: impl FnMut(f64) -> Result<f64>, scale: f64) -> Result<f64> {
    // bracket a minimizer
    let (mut a, mut b) = (-scale, scale);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let mut fm = f(0.0)?;
    let mut m = 0.0;
    for _ in 0..200 {
        if fm <= fa && fm <= fb {
            break;
        }
        if fa < fm {
            b = m;
            fb = fm;
            m = a;
            fm = fa;
            a = m - 2.0 * (b - m);
            fa = f(a)?;
        } else {
            a = m;
            fa = fm;
            m = b;
            fm = fb;
            b = m + 2.0 * (m - a);
            fb = f(b)?;
        }
    }
    let _ = (fa, fb);
    // golden section
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > 1e-12 * scale.max(hi.abs()) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let xmin = 0.5 * (lo + hi);
    if f(xmin)? > 1.0 {
        return Ok(0.0);
    }
    let mut root = |dir: f64| -> Result<f64> {
        let mut inside = xmin;
        let mut step = scale;
        let mut outside = xmin + dir * step;
        while f(outside)? <= 1.0 {
            inside = outside;
            step *= 2.0;
            outside = xmin + dir * step;
        }
        for _ in 0..100 {
            let mid = 0.5 * (inside + outside);
            if (outside - inside).abs() <= 1e-14 * mid.abs().max(scale) {
                break;
            }
            if f(mid)? <= 1.0 {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(0.5 * (inside + outside))
    };
    Ok(root(1.0)? - root(-1.0)?)
}

/// The norm comparison
/// `‖((sξ+tξ')/(t+s), r)‖_{(σK)°ᵖ} ≤ s/(t+s)·‖(ξ,t)‖_{K°ᵖ} + t/(t+s)·‖(ξ',−s)‖_{K°ᵖ}`,
/// `2/r = 1/t + 1/s`, at `samples` seeded pairs; in the plane also the slice
/// volumes `|(σK)°ᵖ(r)| ≥ |K°ᵖ(t)|^{s/(t+s)} |K°ᵖ(−s)|^{t/(t+s)}`.
/// The report carries the worst sample.
#[allow(clippy::too_many_arguments)]
pub fn verify_slice_inclusion(
    body: &ConvexBody,
    p: PExponent,
    t: f64,
    s: f64,
    samples: usize,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    if !(t > 0.0 && s > 0.0) {
        return Err(Error::InvalidInput("t and s must be positive".into()));
    }
    let body = symmetrizable(body)?;
    require_interior(&body)?;
    let n = body.dim();
    let sym = steiner_symmetral(&body, &last_axis(n))?;
    let ev = LpSupportEvaluator::new(&body, p)?;
    let ev_sym = LpSupportEvaluator::new(&sym, p)?;
    let pf = PolarFunctional::new(&ev, Vector::zeros(n), *spec);
    let pf_sym = PolarFunctional::new(&ev_sym, Vector::zeros(n), *spec);
    let r = 2.0 * t * s / (t + s);
    let (wt, ws) = (s / (t + s), t / (t + s));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = t + s;
    let mut worst = (f64::INFINITY, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let xi: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-width..width)).collect();
        let xi2: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-width..width)).collect();
        let mix: Vec<f64> = xi.iter().zip(&xi2).map(|(a, b)| wt * a + ws * b).collect();
        let (l, le) = pf_sym.norm_radial(&join(&mix, r))?;
        let (a, ae) = pf.norm_radial(&join(&xi, t))?;
        let (b, be) = pf.norm_radial(&join(&xi2, -s))?;
        let rhs = wt * a + ws * b;
        let slack = (rhs - l) / rhs;
        if slack < worst.0 {
            worst = (slack, l, rhs, le + ae + be);
        }
    }
    let mut slice_slack = f64::NAN;
    if n == 2 {
        let scale = 1.0 / pf.support_inf(&Vector::from_vec(vec![1.0, 0.0])).min(pf.support_inf(&Vector::from_vec(vec![-1.0, 0.0])));
        let slice = |pf: &PolarFunctional, height: f64| {
            sublevel_length(|x| pf.norm(&Vector::from_vec(vec![x, height])), scale)
        };
        let h = slice(&pf_sym, r)?;
        let f = slice(&pf, t)?;
        let g = slice(&pf, -s)?;
        let lower = f.powf(wt) * g.powf(ws);
        slice_slack = if lower == 0.0 { 1.0 } else { (h - lower) / lower };
        if slice_slack < worst.0 {
            worst = (slice_slack, lower, h, 1e-8);
        }
    }
    let inputs = ReportInputs {
        seed: Some(seed),
        ..ReportInputs::body(&body, p)
    }
    .param("t", t)
    .param("s", s)
    .param("r", r);
    let inputs = if n == 2 { inputs.param("slice_slack", slice_slack) } else { inputs };
    Ok(VerificationReport::new(
        Check::SliceInclusion,
        inputs,
        worst.1,
        worst.2,
        worst.0,
        worst.3,
        NORM_TOLERANCE,
        samples + usize::from(n == 2),
    )
    .with_quadrature(spec))
}

/// `h_{p,σK}(γ((1−τ)ξ + τξ', r)) ≤ w₁ h_{p,K}(α(ξ,t)) + w₂ h_{p,K}(β(ξ',−s))` with
/// `τ = t/(t+s)`, `2/r = 1/t + 1/s`, `1/γ = (1−τ)/α + τ/β`,
/// `w₁ = (1−τ)β/(τα+(1−τ)β)`, `w₂ = τα/(τα+(1−τ)β)`. Slack is absolute.
#[allow(clippy::too_many_arguments)]
pub fn verify_hp_inequality(
    body: &ConvexBody,
    p: PExponent,
    xi: &[f64],
    xi2: &[f64],
    t: f64,
    s: f64,
    alpha: f64,
    beta: f64,
) -> Result<VerificationReport> {
    if !(t > 0.0 && s > 0.0 && alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidInput("t, s, α, β must be positive".into()));
    }
    let body = symmetrizable(body)?;
    let n = body.dim();
    if xi.len() != n - 1 || xi2.len() != n - 1 {
        return Err(Error::InvalidInput("ξ must have n − 1 coordinates".into()));
    }
    let sym = steiner_symmetral(&body, &last_axis(n))?;
    let ev = LpSupportEvaluator::new(&body, p)?;
    let ev_sym = LpSupportEvaluator::new(&sym, p)?;
    let tau = t / (t + s);
    let r = 2.0 * t * s / (t + s);
    let gamma = 1.0 / ((1.0 - tau) / alpha + tau / beta);
    let denom = tau * alpha + (1.0 - tau) * beta;
    let (w1, w2) = ((1.0 - tau) * beta / denom, tau * alpha / denom);
    let mix: Vec<f64> = xi.iter().zip(xi2).map(|(a, b)| (1.0 - tau) * a + tau * b).collect();
    let lhs = ev_sym.h(&(join(&mix, r) * gamma));
    let rhs = w1 * ev.h(&(join(xi, t) * alpha)) + w2 * ev.h(&(join(xi2, -s) * beta));
    let err = 1e-12 * (1.0 + lhs.abs() + rhs.abs());
    let inputs = ReportInputs::body(&body, p)
        .param("t", t)
        .param("s", s)
        .param("alpha", alpha)
        .param("beta", beta)
        .param("gamma", gamma);
    Ok(VerificationReport::new(
        Check::SupportInequality,
        inputs,
        lhs,
        rhs,
        rhs - lhs,
        err,
        SUPPORT_TOLERANCE,
        1,
    )
    .with_note(format!("xi = {xi:?}, xi' = {xi2:?}")))
}

/// Length scale where a convex `ψ` has risen by one above `ψ(0)`.
fn rise_scale(psi: &impl Fn(f64) -> f64) -> f64 {
    let base = psi(0.0);
    let mut r = 1.0;
    if psi(r) - base >= 1.0 {
        while r > 1e-12 && psi(r / 2.0) - base >= 1.0 {
            r /= 2.0;
        }
    } else {
        while r < 1e12 && psi(r) - base < 1.0 {
            r *= 2.0;
        }
    }
    r
}

/// The harmonic-mean inequality
/// `(∫ r^{q−1} H)^{−1/q} ≤ (1−λ)(∫ t^{q−1} F)^{−1/q} + λ(∫ s^{q−1} G)^{−1/q}`
/// for log-concave profiles given as `ψ = −log` (convex, finite at 0).
///
/// The hypothesis `H(r) ≥ F(t)^{w₁} G(s)^{w₂}` on `1/r = (1−λ)/t + λ/s` is
/// spot-checked on a grid and its worst margin stored as `hypothesis_slack`.
pub fn verify_ball_corollary(
    psi_f: impl Fn(f64) -> f64,
    psi_g: impl Fn(f64) -> f64,
    psi_h: impl Fn(f64) -> f64,
    lambda: f64,
    q: u32,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    if !(0.0..=1.0).contains(&lambda) || q == 0 {
        return Err(Error::InvalidInput("λ must lie in [0, 1] and q ≥ 1".into()));
    }
    let moment = |psi: &dyn Fn(f64) -> f64| -> Result<(f64, f64)> {
        let scale = rise_scale(&|r| psi(r));
        let (v, e) = radial_integral(|r| Ok(psi(r)), q, scale, &spec.radial)?;
        Ok((v.powf(-1.0 / q as f64), e / v / q as f64))
    };
    let (mh, eh) = moment(&psi_h)?;
    let (mf, ef) = moment(&psi_f)?;
    let (mg, eg) = moment(&psi_g)?;
    let rhs = (1.0 - lambda) * mf + lambda * mg;
    let mut hyp = f64::INFINITY;
    if lambda > 0.0 && lambda < 1.0 {
        let grid: Vec<f64> = (0..=24).map(|k| 10f64.powf(-2.0 + k as f64 / 6.0)).collect();
        for &t in &grid {
            for &s in &grid {
                let r = 1.0 / ((1.0 - lambda) / t + lambda / s);
                let d = lambda * t + (1.0 - lambda) * s;
                let bound = (1.0 - lambda) * s / d * psi_f(t) + lambda * t / d * psi_g(s);
                hyp = hyp.min(bound - psi_h(r));
            }
        }
    }
    let inputs = ReportInputs {
        lambda: Some(lambda),
        ..ReportInputs::default()
    }
    .param("q", q as f64)
    .param("hypothesis_slack", hyp);
    Ok(VerificationReport::new(
        Check::BallCorollary,
        inputs,
        mh,
        rhs,
        (rhs - mh) / rhs,
        eh + ef + eg,
        NORM_TOLERANCE,
        1,
    )
    .with_quadrature(spec))
}

/// The harmonic-mean inequality on the profiles `α ↦ h_{p,K}(α(ξ,t))`,
/// `β ↦ h_{p,K}(β(ξ',−s))`, `γ ↦ h_{p,σK}(γ((1−τ)ξ+τξ', r))` with `λ = τ`
/// and `q = n`; this is the norm comparison written through radial integrals.
#[allow(clippy::too_many_arguments)]
pub fn verify_ball_corollary_for_body(
    body: &ConvexBody,
    p: PExponent,
    xi: &[f64],
    xi2: &[f64],
    t: f64,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let body = symmetrizable(body)?;
    require_interior(&body)?;
    let n = body.dim();
    let sym = steiner_symmetral(&body, &last_axis(n))?;
    let ev = LpSupportEvaluator::new(&body, p)?;
    let ev_sym = LpSupportEvaluator::new(&sym, p)?;
    let tau = t / (t + s);
    let r = 2.0 * t * s / (t + s);
    let a = join(xi, t);
    let b = join(xi2, -s);
    let mix: Vec<f64> = xi.iter().zip(xi2).map(|(x, y)| (1.0 - tau) * x + tau * y).collect();
    let c = join(&mix, r);
    let report = verify_ball_corollary(
        |al| ev.h(&(&a * al)),
        |be| ev.h(&(&b * be)),
        |ga| ev_sym.h(&(&c * ga)),
        tau,
        n as u32,
        spec,
    )?;
    let mut inputs = report.inputs.clone();
    inputs.body = Some(body.clone());
    inputs.p = Some(p);
    inputs.params.insert("t".into(), t);
    inputs.params.insert("s".into(), s);
    Ok(VerificationReport { inputs, ..report })
}

/// `log(sinh z)` without overflow.
fn log_sinh(z: f64) -> f64 {
    z + (-(-2.0 * z).exp_m1()).ln() - std::f64::consts::LN_2
}

/// Second differences of `t ↦ log(sinh(tx)/t)` on a grid of `x` and `t`;
/// the slack is the smallest one (absolute).
pub fn check_sinh_log_convexity(xs: &[f64], ts: &[f64], step: f64) -> VerificationReport {
    let f = |t: f64, x: f64| log_sinh(t * x) - t.ln();
    let mut worst = (f64::INFINITY, 0.0, 0.0);
    let mut count = 0;
    for &x in xs {
        for &t in ts {
            if t - step <= 0.0 {
                continue;
            }
            let mid = 2.0 * f(t, x);
            let sides = f(t + step, x) + f(t - step, x);
            count += 1;
            if sides - mid < worst.0 {
                worst = (sides - mid, mid, sides);
            }
        }
    }
    let err = 64.0 * f64::EPSILON * worst.1.abs().max(1.0);
    VerificationReport::new(
        Check::SinhLogConvexity,
        ReportInputs::default().param("step", step),
        worst.1,
        worst.2,
        worst.0,
        err,
        CONVEXITY_TOLERANCE,
        count,
    )
}

/// `M_p(K − s_p(K)) ≤ M_p(B₂ⁿ)`.
pub fn verify_main_theorem(body: &ConvexBody, p: PExponent, opts: &SantaloSolveOptions) -> Result<VerificationReport> {
    let sol = santalo_point(body, p, opts)?;
    main_theorem_at(body, p, &sol, opts)
}

pub(crate) fn main_theorem_at(
    body: &ConvexBody,
    p: PExponent,
    sol: &SantaloSolution,
    opts: &SantaloSolveOptions,
) -> Result<VerificationReport> {
    let n = body.dim();
    let m = mahler_volume(body, p, &sol.point, &opts.quadrature)?;
    let (reference, ref_err) = ball_reference_with_error(n, p, &opts.quadrature)?;
    let lhs = m.value();
    let err = m.error() / lhs + ref_err / reference;
    let inputs = ReportInputs::body(body, p)
        .param("gradient_norm", sol.gradient_norm)
        .param("iterations", sol.iterations as f64);
    let mut report = VerificationReport::new(
        Check::MainTheorem,
        inputs,
        lhs,
        reference,
        (reference - lhs) / reference,
        err,
        MAIN_THEOREM_TOLERANCE,
        1,
    )
    .with_quadrature(&opts.quadrature);
    if !sol.converged {
        report = report.with_note("Santaló solver did not reach the gradient tolerance");
    }
    Ok(report)
}

/// Constant in `‖y‖_{K°ᵖ} ≥ c · h_{K−(1−1/λ)b(K)}(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InclusionConstant {
    /// `λ(1−λ)^{1/p}`, which follows from `h_{K−b} ≤ h_{p,K−b}(·/λ) − (n/p)log(1−λ)`.
    Derived,
    /// `λ(1−λ)^p`; implied by the derived one only for `p ≥ 1`.
    Stated,
}

impl InclusionConstant {
    pub fn value(&self, p: PExponent, lambda: f64) -> f64 {
        match (self, p) {
            (Self::Derived, PExponent::Infinity) => lambda,
            (Self::Stated, PExponent::Infinity) => 0.0,
            (Self::Derived, PExponent::Finite(p)) => lambda * (1.0 - lambda).powf(1.0 / p),
            (Self::Stated, PExponent::Finite(p)) => lambda * (1.0 - lambda).powf(p),
        }
    }
}

/// `‖y‖_{K°ᵖ} ≥ c · ‖y‖_{(K−(1−1/λ)b(K))°}` at `samples` seeded unit directions.
pub fn verify_polar_inclusion(
    body: &ConvexBody,
    p: PExponent,
    lambda: f64,
    constant: InclusionConstant,
    samples: usize,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidInput(format!("λ must lie in (0, 1), got {lambda}")));
    }
    require_interior(body)?;
    let n = body.dim();
    let b = body.barycenter()?;
    let shift = &b * (1.0 / lambda - 1.0);
    let c = constant.value(p, lambda);
    let ev = LpSupportEvaluator::new(body, p)?;
    let pf = PolarFunctional::new(&ev, Vector::zeros(n), *spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (f64::INFINITY, 0.0, 0.0, 0.0);
    for _ in 0..samples {
        let y = loop {
            let g = Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let len = g.norm();
            if len > 1e-12 {
                break g / len;
            }
        };
        let (norm, rel) = pf.norm_radial(&y)?;
        let lower = c * (body.support(&y) + shift.dot(&y));
        let slack = (norm - lower) / norm;
        if slack < worst.0 {
            worst = (slack, lower, norm, rel);
        }
    }
    let inputs = ReportInputs {
        lambda: Some(lambda),
        seed: Some(seed),
        ..ReportInputs::body(body, p)
    }
    .param("constant", c);
    let label = match constant {
        InclusionConstant::Derived => "derived constant λ(1−λ)^{1/p}",
        InclusionConstant::Stated => "stated constant λ(1−λ)^p",
    };
    Ok(VerificationReport::new(
        Check::PolarInclusion,
        inputs,
        worst.1,
        worst.2,
        worst.0,
        worst.3,
        NORM_TOLERANCE,
        samples,
    )
    .with_quadrature(spec)
    .with_note(label))
}

/// `‖b(h_{p,K−s_p(K)})‖ ≤ grad_tol`.
pub fn verify_santalo_gradient(body: &ConvexBody, p: PExponent, opts: &SantaloSolveOptions) -> Result<VerificationReport> {
    let sol = santalo_point(body, p, opts)?;
    Ok(santalo_gradient_at(body, p, &sol, opts))
}

pub(crate) fn santalo_gradient_at(
    body: &ConvexBody,
    p: PExponent,
    sol: &SantaloSolution,
    opts: &SantaloSolveOptions,
) -> VerificationReport {
    let err = sol.moments.rel_error() * sol.moments.covariance().norm().sqrt();
    let inputs = ReportInputs::body(body, p).param("iterations", sol.iterations as f64);
    let mut report = VerificationReport::new(
        Check::SantaloGradient,
        inputs,
        sol.gradient_norm,
        opts.grad_tol,
        (opts.grad_tol - sol.gradient_norm) / opts.grad_tol,
        err / opts.grad_tol,
        0.0,
        sol.iterations,
    )
    .with_quadrature(&opts.quadrature);
    report.note = Some(format!("s_p = {:?}", sol.point.as_slice()));
    report
}

/// `n!|K||K°ᵖ|` from the polar-coordinate norm integral against `|K|∫e^{−h}`
/// by iterated Cartesian integration (dimension ≤ 2), both at `x`.
pub fn verify_mahler_identity(
    body: &ConvexBody,
    p: PExponent,
    x: &Vector,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let n = body.dim();
    let ev = LpSupportEvaluator::new(body, p)?;
    let pf = PolarFunctional::new(&ev, x.clone(), *spec);
    let route = if n == 2 { MomentRoute::Adaptive } else { MomentRoute::Auto };
    let polar = pf.moments_with(route)?;
    let (cart, cart_err) = pf.cartesian_volume()?;
    let vol = ev.volume();
    let lhs = polar.v * vol;
    let rhs = cart * vol;
    let inputs = ReportInputs::body(body, p);
    Ok(VerificationReport::new(
        Check::MahlerIdentity,
        inputs,
        lhs,
        rhs,
        -(lhs - rhs).abs() / rhs,
        polar.rel_error() + cart_err / cart,
        IDENTITY_TOLERANCE,
        1,
    )
    .with_quadrature(spec))
}

/// Monotonicity of `M_p(K_0), …, M_p(K_n)` along the Steiner pipeline.
pub fn verify_pipeline(body: &ConvexBody, p: PExponent, opts: &SantaloSolveOptions) -> Result<VerificationReport> {
    let result = steiner_pipeline(body, p, opts)?;
    let trace = result.trace_values();
    let mut worst = (f64::INFINITY, 0.0, 0.0);
    for w in trace.windows(2) {
        let step = (w[1] - w[0]) / w[0];
        if step < worst.0 {
            worst = (step, w[0], w[1]);
        }
    }
    let err: f64 = result.trace.iter().map(|m| m.error() / m.value()).fold(0.0, f64::max) * 2.0;
    let mut inputs = ReportInputs::body(body, p);
    for (i, m) in trace.iter().enumerate() {
        inputs.params.insert(format!("trace_{i}"), *m);
    }
    Ok(VerificationReport::new(
        Check::PipelineMonotonicity,
        inputs,
        worst.1,
        worst.2,
        worst.0,
        err,
        PIPELINE_TOLERANCE,
        trace.len() - 1,
    )
    .with_quadrature(&opts.quadrature))
}

/// Whether `M_p(K)` at the given origin is infinite exactly when the origin
/// is not interior. Always passes unless the two disagree.
pub fn check_finiteness(body: &ConvexBody, p: PExponent, spec: &QuadratureSpec) -> Result<VerificationReport> {
    let n = body.dim();
    let interior = body.interior_depth(&Vector::zeros(n)) > 0.0;
    let m = mahler_volume(body, p, &Vector::zeros(n), spec)?;
    let consistent = interior == m.is_finite();
    let indicator = |b: bool| if b { 1.0 } else { 0.0 };
    let report = VerificationReport::new(
        Check::Finiteness,
        ReportInputs::body(body, p),
        indicator(interior),
        indicator(m.is_finite()),
        if consistent { 0.0 } else { -1.0 },
        0.0,
        0.0,
        1,
    );
    Ok(match m {
        MahlerVolume::Infinite => report.with_note("M_p is infinite: the origin is not an interior point"),
        MahlerVolume::Finite { .. } => report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::santalo::Verdict;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    fn triangle() -> ConvexBody {
        ConvexBody::polytope(&[v(&[-1.0, 1.0]), v(&[2.0, 1.0]), v(&[0.0, 2.0])])
            .unwrap()
            .translate(&v(&[-0.3, -1.3]))
    }

    #[test]
    fn volume_lemma_square_is_equality() {
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let r = verify_volume_lemma(&sq, PExponent::Infinity, &Direction::axis(2, 1), &Default::default()).unwrap();
        assert!(r.slack.abs() < 1e-10, "{r:?}");
        assert_eq!(r.inputs.lambda, Some(0.5));
        let r = verify_volume_lemma(&triangle(), PExponent::Finite(1.0), &Direction::axis(2, 1), &Default::default())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn slice_inclusion_on_square_and_triangle() {
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let r = verify_slice_inclusion(&sq, PExponent::Finite(1.0), 0.5, 1.0, 100, 7, &Default::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let r = verify_slice_inclusion(&triangle(), PExponent::Finite(2.0), 0.3, 0.8, 20, 1, &Default::default())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.inputs.params["slice_slack"] >= -1e-8);
    }

    #[test]
    fn equal_points_give_equality_for_symmetric_body() {
        // t = s and ξ = ξ' on a body symmetric about e_n^⊥: σK = K
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let r = verify_hp_inequality(&sq, PExponent::Finite(1.0), &[0.4], &[0.4], 0.7, 0.7, 1.0, 1.0).unwrap();
        assert!(r.slack.abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn support_inequality_on_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let xi = [rng.random_range(-2.0..2.0)];
            let xi2 = [rng.random_range(-2.0..2.0)];
            let r = verify_hp_inequality(&triangle(), PExponent::Finite(2.0), &xi, &xi2, 1.0, 2.0, 0.7, 1.3).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn ball_corollary_equality_for_identical_profiles() {
        for lambda in [0.0, 0.3, 0.5, 1.0] {
            let r = verify_ball_corollary(|r| r, |r| r, |r| r, lambda, 2, &Default::default()).unwrap();
            assert!(r.slack.abs() < 1e-10, "{r:?}");
        }
        let r = verify_ball_corollary_for_body(
            &ConvexBody::cube(2, 1.0).unwrap(),
            PExponent::Finite(1.0),
            &[0.3],
            &[-0.5],
            0.5,
            1.0,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.inputs.params["hypothesis_slack"] >= -1e-9);
    }

    #[test]
    fn sinh_convexity() {
        let xs: Vec<f64> = (1..=20).map(|k| k as f64 * 0.5).collect();
        let ts: Vec<f64> = (1..=50).map(|k| k as f64 * 0.1).collect();
        let r = check_sinh_log_convexity(&xs, &ts, 1e-3);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!((log_sinh(1.0) - 1f64.sinh().ln()).abs() < 1e-15);
        assert!((log_sinh(1000.0) - (1000.0 - std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn main_theorem_square_and_ball() {
        let opts = SantaloSolveOptions::default();
        let r = verify_main_theorem(&ConvexBody::cube(2, 1.0).unwrap(), PExponent::Infinity, &opts).unwrap();
        assert!((r.lhs - 16.0).abs() < 1e-9 && r.passed());
        let ball = ConvexBody::ball(v(&[0.4, -0.1]), 1.7).unwrap();
        for p in [PExponent::Finite(1.0), PExponent::Infinity] {
            let r = verify_main_theorem(&ball, p, &opts).unwrap();
            assert!(r.slack.abs() < 1e-7 && r.passed(), "{r:?}");
        }
    }

    #[test]
    fn polar_inclusion_constants() {
        let spec = QuadratureSpec::default();
        for p in [PExponent::Finite(0.5), PExponent::Finite(2.0), PExponent::Infinity] {
            for lambda in [0.5, 0.9] {
                let r = verify_polar_inclusion(&triangle(), p, lambda, InclusionConstant::Derived, 30, 5, &spec).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
        let r = verify_polar_inclusion(&triangle(), PExponent::Finite(2.0), 0.9, InclusionConstant::Stated, 30, 5, &spec)
            .unwrap();
        assert!(r.passed());
    }

    #[test]
    fn identity_two_paths() {
        let r = verify_mahler_identity(&triangle(), PExponent::Finite(1.0), &Vector::zeros(2), &Default::default())
            .unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn finiteness_flags_boundary_origin() {
        let sq = ConvexBody::cube(2, 1.0).unwrap().translate(&v(&[1.0, 0.0]));
        let r = check_finiteness(&sq, PExponent::Finite(1.0), &Default::default()).unwrap();
        assert!(r.passed() && r.rhs == 0.0 && r.note.is_some());
    }
}
