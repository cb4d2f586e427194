//! Lp-support functions, Lp-polar bodies and Lp-Mahler volumes.

mod cartesian;
pub mod exact;
mod polar;
pub mod special;
mod support;

pub use exact::polar_polytope;
pub use polar::{ExpMoments, HalfVolume, MomentRoute, PolarFunctional, PolarVolume};
pub use support::{h_p, LpSupportEvaluator};

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::quadrature::QuadratureSpec;
use crate::{Matrix, Vector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// `p ∈ (0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 {
            Ok(Self::Finite(p))
        } else if p == f64::INFINITY {
            Ok(Self::Infinity)
        } else {
            Err(Error::InvalidInput(format!("p must lie in (0, ∞], got {p}")))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Self::Finite(p) => *p,
            Self::Infinity => f64::INFINITY,
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            _ => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse p from {s:?}")))?;
                Self::finite(p)
            }
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(p) => s.serialize_f64(*p),
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => Self::finite(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// `M_p(K − x)`, infinite when `x` is not an interior point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MahlerVolume {
    Finite { value: f64, error: f64 },
    Infinite,
}

impl MahlerVolume {
    pub fn value(&self) -> f64 {
        match self {
            Self::Finite { value, .. } => *value,
            Self::Infinite => f64::INFINITY,
        }
    }

    pub fn error(&self) -> f64 {
        match self {
            Self::Finite { error, .. } => *error,
            Self::Infinite => 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite { .. })
    }
}

/// `M_p(K − x) = n! |K| |(K−x)°ᵖ| = |K| ∫ e^{−h_{p,K−x}}`.
pub fn mahler_volume(body: &ConvexBody, p: PExponent, x: &Vector, spec: &QuadratureSpec) -> Result<MahlerVolume> {
    if x.len() != body.dim() {
        return Err(Error::InvalidInput("translation dimension mismatch".into()));
    }
    let ev = LpSupportEvaluator::new(body, p)?;
    let pf = PolarFunctional::new(&ev, x.clone(), *spec);
    if !pf.is_integrable() {
        return Ok(MahlerVolume::Infinite);
    }
    match pf.moments() {
        Ok(m) => Ok(MahlerVolume::Finite {
            value: ev.volume() * m.v,
            error: ev.volume() * m.error(),
        }),
        Err(Error::NonIntegrable(_)) => Ok(MahlerVolume::Infinite),
        Err(e) => Err(e),
    }
}

/// `|K°ᵖ|` for the body as given (no translation).
pub fn polar_volume_of(body: &ConvexBody, p: PExponent, spec: &QuadratureSpec) -> Result<PolarVolume> {
    let ev = LpSupportEvaluator::new(body, p)?;
    PolarFunctional::new(&ev, Vector::zeros(body.dim()), *spec).polar_volume()
}

/// `(‖y‖_{(AK)°ᵖ}, ‖Aᵀy‖_{K°ᵖ})`, equal since `(AK)°ᵖ = A^{−T} K°ᵖ`.
///
/// The left side is evaluated on the materialized image `AK` (a polytope
/// when `K` is one), the right side on `K` itself.
pub fn lp_polar_transform_check(
    body: &ConvexBody,
    a: &Matrix,
    p: PExponent,
    y: &Vector,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let n = body.dim();
    let zero = Vector::zeros(n);
    let image = match crate::geometry::transform(body, a, &zero) {
        Err(Error::BallNonOrthogonal) => ConvexBody::affine_image(body.clone(), a.clone(), zero.clone())?,
        other => other?,
    };
    let ev_image = LpSupportEvaluator::new(&image, p)?;
    let ev_base = LpSupportEvaluator::new(body, p)?;
    let lhs = PolarFunctional::new(&ev_image, zero.clone(), *spec).norm(y)?;
    let rhs = PolarFunctional::new(&ev_base, zero, *spec).norm(&(a.transpose() * y))?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests;
