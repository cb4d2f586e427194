use crate::geometry::ConvexBody;
use crate::lp_polar::PExponent;
use crate::quadrature::QuadratureSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which inequality or identity a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|(σ_u K)°ᵖ| ≥ 4λ(1−λ)|K°ᵖ|`.
    VolumeLemma,
    /// Norm and slice-volume comparison between `K°ᵖ` and `(σK)°ᵖ`.
    SliceInclusion,
    /// Two-point inequality between `h_{p,σK}` and `h_{p,K}`.
    SupportInequality,
    /// Harmonic-mean Brunn–Minkowski inequality for radial moments.
    BallCorollary,
    /// Convexity of `t ↦ log(sinh(tx)/t)`.
    SinhLogConvexity,
    /// `M_p(K − s_p(K)) ≤ M_p(B₂ⁿ)`.
    MainTheorem,
    /// `K°ᵖ ⊂ c⁻¹ (K − (1−1/λ) b(K))°`.
    PolarInclusion,
    /// `b(h_{p,K−s_p}) = 0`.
    SantaloGradient,
    /// `M_p(K_0) ≤ … ≤ M_p(K_n)` along the Steiner pipeline.
    PipelineMonotonicity,
    /// `n!|K||K°ᵖ| = |K|∫e^{−h}` by two quadrature paths.
    MahlerIdentity,
    /// `M_p(K) < ∞` exactly when the origin is interior.
    Finiteness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Violated by less than the estimated numerical error.
    Inconclusive,
    Fail,
}

impl Verdict {
    /// `slack ≥ 0` means the inequality holds. Within `tolerance` it passes;
    /// within `tolerance + error_bound` it is inconclusive.
    pub fn classify(slack: f64, tolerance: f64, error_bound: f64) -> Self {
        if slack >= -tolerance {
            Self::Pass
        } else if slack >= -(tolerance + error_bound) {
            Self::Inconclusive
        } else {
            Self::Fail
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<ConvexBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<PExponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl ReportInputs {
    pub fn body(body: &ConvexBody, p: PExponent) -> Self {
        Self {
            body: Some(body.clone()),
            p: Some(p),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// Outcome of one numerical check, replayable from its inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: Check,
    pub inputs: ReportInputs,
    /// The side expected to be smaller, at the worst sample.
    pub lhs: f64,
    pub rhs: f64,
    /// Normalized margin (`≥ 0` when the inequality holds); relative unless
    /// the check says otherwise.
    pub slack: f64,
    pub error_bound: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        check: Check,
        inputs: ReportInputs,
        lhs: f64,
        rhs: f64,
        slack: f64,
        error_bound: f64,
        tolerance: f64,
        samples: usize,
    ) -> Self {
        let verdict = if slack.is_nan() {
            Verdict::Inconclusive
        } else {
            Verdict::classify(slack, tolerance, error_bound)
        };
        Self {
            check,
            inputs,
            lhs,
            rhs,
            slack,
            error_bound,
            tolerance,
            samples,
            verdict,
            quadrature: None,
            note: None,
        }
    }

    pub fn with_quadrature(mut self, spec: &QuadratureSpec) -> Self {
        self.quadrature = Some(*spec);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
