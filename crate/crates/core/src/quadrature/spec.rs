use super::radial::RadialOptions;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How directions on the sphere are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SphereRule {
    /// Exact two-point rule in dimension 1, adaptive Gauss–Kronrod in the
    /// angle with breakpoints at kinks in dimension 2, a Gauss product rule
    /// in dimension 3, Monte Carlo above.
    Auto,
    /// A single node budget: uniform angles (n = 2), Fibonacci lattice
    /// (n = 3), Monte Carlo directions (n ≥ 4).
    Count { nodes: usize },
    UniformAngle { nodes: usize },
    GaussProduct { polar: usize, azimuth: usize },
    Fibonacci { nodes: usize },
    MonteCarlo { samples: usize },
}

impl SphereRule {
    /// Node count used by `Auto` when a fixed circle rule is requested.
    pub const DEFAULT_CIRCLE_NODES: usize = 1024;
    pub const DEFAULT_GAUSS_PRODUCT: (usize, usize) = (32, 64);
}

/// Everything that determines a numerical result besides the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub sphere: SphereRule,
    /// Relative tolerance of the adaptive angular integral (n = 2).
    pub angular_rel_tol: f64,
    pub angular_max_subdivisions: usize,
    pub radial: RadialOptions,
    pub mc_seed: u64,
    pub mc_samples: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            sphere: SphereRule::Auto,
            angular_rel_tol: 1e-10,
            angular_max_subdivisions: 2000,
            radial: RadialOptions::default(),
            mc_seed: 0x5eed,
            mc_samples: 20_000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.angular_rel_tol) || !positive(self.radial.rel_tol) || !positive(self.radial.abs_tol) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.mc_samples == 0 || self.angular_max_subdivisions == 0 || self.radial.max_subdivisions == 0 {
            return Err(Error::InvalidInput("sample and subdivision counts must be at least 1".into()));
        }
        let counts_ok = match self.sphere {
            SphereRule::Auto => true,
            SphereRule::Count { nodes } | SphereRule::UniformAngle { nodes } | SphereRule::Fibonacci { nodes } => nodes >= 1,
            SphereRule::GaussProduct { polar, azimuth } => polar >= 1 && azimuth >= 1,
            SphereRule::MonteCarlo { samples } => samples >= 1,
        };
        if !counts_ok {
            return Err(Error::InvalidInput("sphere rule needs at least one node".into()));
        }
        Ok(())
    }

    /// Sets both the radial and the angular relative tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.radial.rel_tol = rel_tol;
        self.angular_rel_tol = rel_tol;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_validation() {
        let spec = QuadratureSpec {
            sphere: SphereRule::GaussProduct { polar: 8, azimuth: 16 },
            ..QuadratureSpec::default()
        };
        let back: QuadratureSpec = serde_json::from_str(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        assert!(spec.validate().is_ok());
        let bad = QuadratureSpec::default().with_rel_tol(0.0);
        assert!(bad.validate().is_err());
        let bad = QuadratureSpec {
            sphere: SphereRule::Count { nodes: 0 },
            ..QuadratureSpec::default()
        };
        assert!(bad.validate().is_err());
    }
}
