//! Steiner symmetrization along `e₁, …, e_n` with recentering, tracking
//! `inf_x M_p` after every step.
//!
//! Step `i` with `u = e_i`:
//! 1. `S = σ_u K_{i−1}` and `c = s_p(S)`, which lies in `u^⊥` (and in every
//!    earlier `e_j^⊥`, by symmetry); the components along those axes are
//!    zeroed;
//! 2. `L = K_{i−1} − c` and `t` such that `u^⊥` ½-separates `(L − tu)°ᵖ`;
//! 3. `M_p(L − tu) ≤ M_p(σ_u L)` by the volume comparison with `λ = ½`;
//! 4. `K_i = σ_u L = S − c`, whose Lp-Santaló point is the origin.
//!
//! Hence `M_p(K_0) ≤ M_p(L₁ − t₁u) ≤ M_p(K_1) ≤ … ≤ M_p(K_n)`.

use super::separation::{separating_translation, SeparationResult, SeparationSearch};
use super::solver::{santalo_point, SantaloSolveOptions};
use crate::error::Result;
use crate::geometry::{steiner_symmetral, ConvexBody, Direction};
use crate::lp_polar::{mahler_volume, MahlerVolume, PExponent};
use crate::Vector;

/// Vertex count used when a non-polytope affine image must be approximated.
pub const MATERIALIZE_RESOLUTION: usize = 512;

#[derive(Debug, Clone)]
pub struct PipelineStep {
    pub axis: usize,
    /// `c = s_p(σ_u K_{i−1})` after zeroing the symmetric components.
    pub recenter: Vector,
    /// The raw solver output before zeroing.
    pub raw_recenter: Vector,
    pub separation: SeparationResult,
    /// `M_p(L − tu)`.
    pub translated: MahlerVolume,
    /// `M_p(K_i)`.
    pub symmetral: MahlerVolume,
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// `s_p(K)`.
    pub initial_point: Vector,
    /// `K_0, …, K_n`.
    pub bodies: Vec<ConvexBody>,
    /// `M_p(K_0), …, M_p(K_n)`.
    pub trace: Vec<MahlerVolume>,
    pub steps: Vec<PipelineStep>,
}

impl PipelineResult {
    pub fn final_body(&self) -> &ConvexBody {
        self.bodies.last().expect("pipeline keeps K_0")
    }

    pub fn trace_values(&self) -> Vec<f64> {
        self.trace.iter().map(MahlerVolume::value).collect()
    }

    /// Smallest relative increase `(M_i − M_{i−1}) / M_{i−1}` along the trace.
    pub fn worst_step(&self) -> f64 {
        self.trace
            .windows(2)
            .map(|w| (w[1].value() - w[0].value()) / w[0].value())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_monotone(&self, rel_tol: f64) -> bool {
        self.trace.len() < 2 || self.worst_step() >= -rel_tol
    }
}

/// Polytope or ball form of `body` on which Steiner symmetrization is exact
/// (affine images of polytopes are mapped exactly; other images are
/// approximated by [`MATERIALIZE_RESOLUTION`] boundary points).
pub fn symmetrizable(body: &ConvexBody) -> Result<ConvexBody> {
    match body {
        ConvexBody::AffineImage(_) => body.materialize(MATERIALIZE_RESOLUTION),
        _ => Ok(body.clone()),
    }
}

pub fn steiner_pipeline(body: &ConvexBody, p: PExponent, opts: &SantaloSolveOptions) -> Result<PipelineResult> {
    let body = symmetrizable(body)?;
    let n = body.dim();
    let spec = &opts.quadrature;
    let zero = Vector::zeros(n);
    let s0 = santalo_point(&body, p, opts)?.require_converged()?.point;
    let mut current = body.translate(&-&s0);
    let mut bodies = vec![current.clone()];
    let mut trace = vec![mahler_volume(&current, p, &zero, spec)?];
    let mut steps = Vec::with_capacity(n);
    for axis in 0..n {
        let u = Direction::axis(n, axis);
        let sym = steiner_symmetral(&current, &u)?;
        let raw = santalo_point(&sym, p, opts)?.require_converged()?.point;
        let mut c = raw.clone();
        for j in 0..=axis {
            c[j] = 0.0;
        }
        let shifted = current.translate(&-&c);
        let separation = separating_translation(&shifted, p, &u, 0.5, &SeparationSearch::default(), spec)?;
        let translated = mahler_volume(&shifted, p, &(u.as_vector() * separation.t), spec)?;
        current = sym.translate(&-&c);
        let symmetral = mahler_volume(&current, p, &zero, spec)?;
        trace.push(symmetral);
        bodies.push(current.clone());
        steps.push(PipelineStep {
            axis,
            recenter: c,
            raw_recenter: raw,
            separation,
            translated,
            symmetral,
        });
    }
    Ok(PipelineResult {
        initial_point: s0,
        bodies,
        trace,
        steps,
    })
}
