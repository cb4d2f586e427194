//! Lp-Santaló point, separating translations, the Steiner pipeline and
//! numerical verification of the inequalities that connect them.

mod pipeline;
mod reference;
mod report;
mod separation;
mod solver;
mod verify;

pub use pipeline::{steiner_pipeline, symmetrizable, PipelineResult, PipelineStep, MATERIALIZE_RESOLUTION};
pub use reference::{ball_reference, ball_reference_generic, ball_reference_with_error, bergman_bound, BergmanBound};
pub use report::{Check, ReportInputs, Verdict, VerificationReport};
pub use separation::{separating_translation, split_ratio, SeparationResult, SeparationSearch};
pub use solver::{santalo_point, solve, SantaloSolution, SantaloSolveOptions};
pub use verify::{
    check_finiteness, check_sinh_log_convexity, verify_ball_corollary, verify_ball_corollary_for_body,
    verify_hp_inequality, verify_mahler_identity, verify_main_theorem, verify_pipeline, verify_polar_inclusion,
    verify_santalo_gradient, verify_slice_inclusion, verify_volume_lemma, InclusionConstant, CONVEXITY_TOLERANCE,
    IDENTITY_TOLERANCE, MAIN_THEOREM_TOLERANCE, NORM_TOLERANCE, PIPELINE_TOLERANCE, SUPPORT_TOLERANCE,
};

use crate::error::Result;
use crate::geometry::{ConvexBody, Direction};
use crate::lp_polar::PExponent;
use crate::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Which checks [`verification_suite`] runs beyond the Santaló point and
/// the main inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub lemmas: bool,
    pub pipeline: bool,
    /// Sampled pairs in the norm comparison.
    pub slice_samples: usize,
    /// Sampled directions in the inclusion checks.
    pub inclusion_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            lemmas: true,
            pipeline: true,
            slice_samples: 20,
            inclusion_samples: 20,
        }
    }
}

/// Every check applicable to `(K, p)`, seeded for replay.
///
/// Finiteness is checked at the body's own origin; all other checks run on
/// `K − s_p(K)` so that the origin is interior.
pub fn verification_suite(
    body: &ConvexBody,
    p: PExponent,
    seed: u64,
    opts: &SantaloSolveOptions,
    suite: &SuiteOptions,
) -> Result<Vec<VerificationReport>> {
    let spec = &opts.quadrature;
    let n = body.dim();
    let mut out = vec![check_finiteness(body, p, spec)?];
    let sol = santalo_point(body, p, opts)?;
    out.push(verify::santalo_gradient_at(body, p, &sol, opts));
    out.push(verify::main_theorem_at(body, p, &sol, opts)?);
    let centered = body.translate(&-&sol.point);
    if n <= 2 {
        out.push(verify_mahler_identity(&centered, p, &Vector::zeros(n), spec)?);
    }
    if !suite.lemmas || n < 2 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = Direction::new(Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal)))?;
    out.push(verify_volume_lemma(&centered, p, &u, spec)?);
    let (t, s) = (rng.random_range(0.2..2.0), rng.random_range(0.2..2.0));
    out.push(verify_slice_inclusion(&centered, p, t, s, suite.slice_samples, rng.random(), spec)?);
    let xi: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
    let xi2: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
    let (alpha, beta) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
    out.push(verify_hp_inequality(&centered, p, &xi, &xi2, t, s, alpha, beta)?);
    out.push(verify_ball_corollary_for_body(&centered, p, &xi, &xi2, t, s, spec)?);
    for lambda in [0.5, 0.9] {
        let seed = rng.random();
        out.push(verify_polar_inclusion(
            &centered,
            p,
            lambda,
            InclusionConstant::Derived,
            suite.inclusion_samples,
            seed,
            spec,
        )?);
        if p.as_f64() >= 1.0 {
            out.push(verify_polar_inclusion(
                &centered,
                p,
                lambda,
                InclusionConstant::Stated,
                suite.inclusion_samples,
                seed,
                spec,
            )?);
        }
    }
    if suite.pipeline && n <= 3 {
        out.push(verify_pipeline(body, p, opts)?);
    }
    Ok(out)
}
