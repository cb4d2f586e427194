//! The near-norm of `(K−x)°ᵖ`, polar volumes and exponential moments of
//! `φ = h_{p,K−x}`.
//!
//! In polar coordinates `∫ g(y) e^{−φ(y)} dy = ∫_{S^{n−1}} ∫_0^∞ r^{n−1} g(rθ)
//! e^{−φ(rθ)} dr dθ`. With `I_q(θ) = ∫_0^∞ r^{q−1} e^{−φ(rθ)} dr`:
//! - `‖θ‖ = (I_n(θ)/(n−1)!)^{−1/n}`,
//! - `V = ∫ e^{−φ} = ∫ I_n`, `|K°ᵖ| = V/n!`,
//! - `∫ y e^{−φ} = ∫ θ I_{n+1}`, `∫ y yᵀ e^{−φ} = ∫ θθᵀ I_{n+2}`.

use super::cartesian;
use super::exact::polar_polytope;
use super::support::LpSupportEvaluator;
use super::PExponent;
use crate::error::{Error, Result};
use crate::geometry::{factorial, ConvexBody, Direction};
use crate::quadrature::sphere::{fibonacci, gauss_product, monte_carlo, uniform_angle};
use crate::quadrature::{integrate, radial_moments, AdaptiveOptions, QuadratureSpec, RadialEstimate, SphereRule};
use crate::{Matrix, Vector};
use serde::{Deserialize, Serialize};
use std::cell::Cell;
use std::f64::consts::PI;

/// How the sphere integral is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentRoute {
    /// Exact for `p = ∞` polytopes, otherwise the default rule for the dimension.
    Auto,
    /// Closed form through the classical polar polytope (`p = ∞` only).
    Exact,
    /// Adaptive Gauss–Kronrod in the angle (dimension 2).
    Adaptive,
    /// A fixed sphere rule.
    Rule(SphereRule),
    /// Iterated Cartesian integration (dimension 2, volume only).
    Cartesian,
}

/// Moments of `e^{−φ}` with error estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpMoments {
    /// `V(φ) = ∫ e^{−φ}`.
    pub v: f64,
    /// `∫ y e^{−φ(y)} dy`.
    pub first: Vector,
    /// `∫ y yᵀ e^{−φ(y)} dy`.
    pub second: Matrix,
    /// Absolute error estimate for `v` from the angular discretization.
    pub angular_error: f64,
    /// Absolute error estimate for `v` from the radial integrals.
    pub radial_error: f64,
    pub route: MomentRoute,
    pub monte_carlo: bool,
}

impl ExpMoments {
    /// `b(φ) = ∫ y e^{−φ} / V`.
    pub fn barycenter(&self) -> Vector {
        &self.first / self.v
    }

    /// Covariance of the probability density `e^{−φ}/V`.
    pub fn covariance(&self) -> Matrix {
        let b = self.barycenter();
        &self.second / self.v - &b * b.transpose()
    }

    pub fn error(&self) -> f64 {
        self.angular_error + self.radial_error
    }

    pub fn rel_error(&self) -> f64 {
        self.error() / self.v
    }
}

/// A volume that may be infinite, as `|(K−x)°ᵖ ∩ H|` is when `x` reaches the
/// boundary of `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HalfVolume {
    Finite { value: f64, error: f64 },
    Infinite,
}

impl HalfVolume {
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarVolume {
    pub value: f64,
    pub error: f64,
}

/// `(K−x)°ᵖ` seen through `φ = h_{p,K−x}`.
#[derive(Debug, Clone)]
pub struct PolarFunctional<'a> {
    ev: &'a LpSupportEvaluator,
    x: Vector,
    spec: QuadratureSpec,
}

impl<'a> PolarFunctional<'a> {
    pub fn new(ev: &'a LpSupportEvaluator, x: Vector, spec: QuadratureSpec) -> Self {
        assert_eq!(x.len(), ev.dim(), "translation dimension mismatch");
        Self { ev, x, spec }
    }

    pub fn evaluator(&self) -> &LpSupportEvaluator {
        self.ev
    }

    pub fn translation(&self) -> &Vector {
        &self.x
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.ev.dim()
    }

    /// `φ(y) = h_{p,K−x}(y)`.
    pub fn phi(&self, y: &Vector) -> f64 {
        self.ev.h_translated(y, &self.x)
    }

    /// Classical support function of `K − x`.
    pub fn support_inf(&self, y: &Vector) -> f64 {
        self.ev.body().support(y) - self.x.dot(y)
    }

    /// Whether `x` is an interior point of `K`, i.e. every moment is finite.
    pub fn is_integrable(&self) -> bool {
        self.ev.body().interior_depth(&self.x) > 0.0
    }

    fn ensure_integrable(&self) -> Result<()> {
        if self.is_integrable() {
            Ok(())
        } else {
            Err(Error::NonIntegrable(
                "the origin is not an interior point of the translated body".into(),
            ))
        }
    }

    /// `I_n, I_{n+1}, I_{n+2}` along the unit direction `theta`.
    pub fn directional(&self, theta: &Vector) -> Result<RadialEstimate<3>> {
        let h = self.support_inf(theta);
        if !(h > 0.0) {
            return Err(Error::NonIntegrable(format!(
                "support of the translated body is {h:e} in this direction"
            )));
        }
        let n = self.dim() as u32;
        let mut y = theta.clone();
        radial_moments(
            |r| {
                y.copy_from(theta);
                y *= r;
                Ok(self.phi(&y))
            },
            [n, n + 1, n + 2],
            1.0 / h,
            &self.spec.radial,
        )
    }

    /// `‖y‖_{(K−x)°ᵖ}`; closed form `h_{K−x}(y)` when `p = ∞`.
    pub fn norm(&self, y: &Vector) -> Result<f64> {
        match self.ev.p() {
            PExponent::Infinity => {
                let h = self.support_inf(y);
                if h > 0.0 || y.norm() == 0.0 {
                    Ok(h.max(0.0))
                } else {
                    Err(Error::NonIntegrable(format!("support {h:e} ≤ 0 along the query direction")))
                }
            }
            PExponent::Finite(_) => Ok(self.norm_radial(y)?.0),
        }
    }

    /// Near-norm through the radial integral, with its relative error.
    pub fn norm_radial(&self, y: &Vector) -> Result<(f64, f64)> {
        let len = y.norm();
        if len == 0.0 {
            return Ok((0.0, 0.0));
        }
        let theta = y / len;
        let n = self.dim();
        let h = self.support_inf(&theta);
        if !(h > 0.0) {
            return Err(Error::NonIntegrable(format!("support {h:e} ≤ 0 along the query direction")));
        }
        let mut ray = theta.clone();
        let est = radial_moments(
            |r| {
                ray.copy_from(&theta);
                ray *= r;
                Ok(self.phi(&ray))
            },
            [n as u32],
            1.0 / h,
            &self.spec.radial,
        )?;
        let value = (est.value[0] / factorial(n - 1)).powf(-1.0 / n as f64);
        Ok((len * value, est.error[0] / est.value[0] / n as f64))
    }

    fn default_route(&self) -> MomentRoute {
        let exact_ok = self.ev.p() == PExponent::Infinity
            && self.ev.body().as_polytope().is_some_and(|p| !p.facets().is_empty());
        if exact_ok {
            return MomentRoute::Exact;
        }
        match (self.dim(), self.spec.sphere) {
            (1, _) => MomentRoute::Rule(SphereRule::Auto),
            (2, SphereRule::Auto) => MomentRoute::Adaptive,
            (_, rule) => MomentRoute::Rule(rule),
        }
    }

    /// `V`, `∫ y e^{−φ}` and `∫ y yᵀ e^{−φ}` by the default route.
    pub fn moments(&self) -> Result<ExpMoments> {
        self.moments_with(MomentRoute::Auto)
    }

    pub fn moments_with(&self, route: MomentRoute) -> Result<ExpMoments> {
        self.ensure_integrable()?;
        let route = if route == MomentRoute::Auto { self.default_route() } else { route };
        let n = self.dim();
        match route {
            MomentRoute::Auto => unreachable!("resolved above"),
            MomentRoute::Exact => self.exact_moments(),
            MomentRoute::Adaptive => {
                if n != 2 {
                    return Err(Error::UnsupportedDimension {
                        dim: n,
                        reason: "adaptive angular integration is planar".into(),
                    });
                }
                self.adaptive_moments()
            }
            MomentRoute::Rule(rule) => self.rule_moments(rule),
            MomentRoute::Cartesian => {
                let (v, err) = cartesian::cartesian_volume(self)?;
                Ok(ExpMoments {
                    v,
                    first: Vector::from_element(n, f64::NAN),
                    second: Matrix::from_element(n, n, f64::NAN),
                    angular_error: err,
                    radial_error: 0.0,
                    route,
                    monte_carlo: false,
                })
            }
        }
    }

    fn exact_moments(&self) -> Result<ExpMoments> {
        if self.ev.p() != PExponent::Infinity {
            return Err(Error::InvalidInput("the closed-form route needs p = ∞".into()));
        }
        let n = self.dim();
        let polar = polar_polytope(self.ev.body(), &self.x)?.ok_or_else(|| {
            Error::UnsupportedKind("the closed-form route needs a polytope of dimension ≤ 3".into())
        })?;
        let vol = polar.volume()?;
        let v = factorial(n) * vol;
        Ok(ExpMoments {
            v,
            first: polar.barycenter()? * (vol * factorial(n + 1)),
            second: polar.second_moment()? * factorial(n + 2),
            angular_error: 1e-13 * v,
            radial_error: 0.0,
            route: MomentRoute::Exact,
            monte_carlo: false,
        })
    }

    /// Angles where `θ ↦ h_{K−x}(θ)` has kinks (outward facet normals).
    fn kink_angles(&self) -> Vec<f64> {
        fn normals(body: &ConvexBody) -> Vec<Vector> {
            match body {
                ConvexBody::VPolytope(p) => p.facets().iter().map(|f| f.normal.clone()).collect(),
                ConvexBody::Ball(_) => Vec::new(),
                ConvexBody::AffineImage(a) => {
                    let inv_t = a.inverse().transpose();
                    normals(a.base()).iter().map(|v| &inv_t * v).collect()
                }
            }
        }
        normals(self.ev.body())
            .iter()
            .map(|v| v[1].atan2(v[0]))
            .collect()
    }

    /// Adaptive integral of `f(α)` over `[a, b]` in the plane, with kink
    /// angles (shifted into range) as breakpoints.
    fn angular<const M: usize, F>(&self, a: f64, b: f64, mut f: F) -> Result<crate::quadrature::Estimate<M>>
    where
        F: FnMut(f64) -> Result<[f64; M]>,
    {
        let mut breaks = Vec::new();
        for k in self.kink_angles() {
            let mut t = k;
            while t < a {
                t += 2.0 * PI;
            }
            while t > b {
                t -= 2.0 * PI;
            }
            if t > a && t < b {
                breaks.push(t);
            }
        }
        let opts = AdaptiveOptions {
            rel_tol: self.spec.angular_rel_tol,
            abs_tol: 1e-300,
            max_subdivisions: self.spec.angular_max_subdivisions,
        };
        integrate(&mut f, a, b, &breaks, opts)
    }

    fn adaptive_moments(&self) -> Result<ExpMoments> {
        let worst_radial = Cell::new(0.0f64);
        let est = self.angular(0.0, 2.0 * PI, |alpha| {
            let (s, c) = alpha.sin_cos();
            let r = self.directional(&Vector::from_vec(vec![c, s]))?;
            let rel = (0..3).map(|k| r.error[k] / r.value[k]).fold(0.0, f64::max);
            worst_radial.set(worst_radial.get().max(rel));
            let [i0, i1, i2] = r.value;
            Ok([i0, c * i1, s * i1, c * c * i2, c * s * i2, s * s * i2])
        })?;
        let [v, b0, b1, s00, s01, s11] = est.value;
        Ok(ExpMoments {
            v,
            first: Vector::from_vec(vec![b0, b1]),
            second: Matrix::from_row_slice(2, 2, &[s00, s01, s01, s11]),
            angular_error: est.error[0],
            radial_error: worst_radial.get() * v,
            route: MomentRoute::Adaptive,
            monte_carlo: false,
        })
    }

    /// Nodes of a fixed rule; `pole` orients Gauss product rules so that the
    /// hemispheres about `pole` are split exactly.
    fn rule_nodes(&self, rule: SphereRule, pole: Option<&Vector>) -> Result<(Vec<(Vector, f64)>, bool)> {
        let n = self.dim();
        let seed = self.spec.mc_seed;
        let wrong = |name: &str| {
            Err(Error::UnsupportedDimension {
                dim: n,
                reason: format!("{name} rule is defined for a different dimension"),
            })
        };
        let nodes = match (n, rule) {
            (1, _) => vec![
                (Vector::from_element(1, 1.0), 1.0),
                (Vector::from_element(1, -1.0), 1.0),
            ],
            (2, SphereRule::Auto) => uniform_angle(SphereRule::DEFAULT_CIRCLE_NODES),
            (2, SphereRule::Count { nodes }) | (2, SphereRule::UniformAngle { nodes }) => uniform_angle(nodes),
            (3, SphereRule::Auto) => {
                let (p, a) = SphereRule::DEFAULT_GAUSS_PRODUCT;
                gauss_product(p, a)
            }
            (3, SphereRule::GaussProduct { polar, azimuth }) => gauss_product(polar, azimuth),
            (3, SphereRule::Count { nodes }) | (3, SphereRule::Fibonacci { nodes }) => fibonacci(nodes),
            (_, SphereRule::MonteCarlo { samples }) => return Ok((monte_carlo(n, samples, seed), true)),
            (_, SphereRule::Auto) if n >= 4 => return Ok((monte_carlo(n, self.spec.mc_samples, seed), true)),
            (_, SphereRule::Count { nodes }) if n >= 4 => return Ok((monte_carlo(n, nodes, seed), true)),
            (_, SphereRule::UniformAngle { .. }) => return wrong("uniform-angle"),
            (_, SphereRule::GaussProduct { .. }) => return wrong("Gauss product"),
            (_, SphereRule::Fibonacci { .. }) => return wrong("Fibonacci"),
            _ => return wrong("sphere"),
        };
        let rotate = n == 3
            && matches!(rule, SphereRule::Auto | SphereRule::GaussProduct { .. })
            && pole.is_some();
        if rotate {
            let u = pole.expect("checked");
            let basis = crate::geometry::complement_basis(u);
            let frame = Matrix::from_columns(&[basis[0].clone(), basis[1].clone(), u.clone()]);
            return Ok((nodes.into_iter().map(|(t, w)| (&frame * t, w)).collect(), false));
        }
        Ok((nodes, false))
    }

    fn rule_moments(&self, rule: SphereRule) -> Result<ExpMoments> {
        let n = self.dim();
        let (nodes, mc) = self.rule_nodes(rule, None)?;
        let mut v = 0.0;
        let mut v_half = 0.0;
        let mut sum_sq = 0.0;
        let mut radial_error = 0.0;
        let mut first = Vector::zeros(n);
        let mut second = Matrix::zeros(n, n);
        for (k, (theta, w)) in nodes.iter().enumerate() {
            let r = self.directional(theta)?;
            let [i0, i1, i2] = r.value;
            v += w * i0;
            if k % 2 == 0 {
                v_half += 2.0 * w * i0;
            }
            sum_sq += (w * i0) * (w * i0);
            radial_error += w * r.error[0];
            first += theta * (w * i1);
            second += theta * theta.transpose() * (w * i2);
        }
        let m = nodes.len() as f64;
        let angular_error = if mc {
            // standard error of the mean of w·I over the sample
            let mean = v / m;
            ((sum_sq / m - mean * mean).max(0.0) / m).sqrt() * m
        } else if nodes.len() > 2 {
            (v - v_half).abs()
        } else {
            0.0
        };
        Ok(ExpMoments {
            v,
            first,
            second,
            angular_error,
            radial_error,
            route: MomentRoute::Rule(rule),
            monte_carlo: mc,
        })
    }

    /// `|K°ᵖ| = V / n!`.
    pub fn polar_volume(&self) -> Result<PolarVolume> {
        let m = self.moments()?;
        let f = factorial(self.dim());
        Ok(PolarVolume {
            value: m.v / f,
            error: m.error() / f,
        })
    }

    /// `(V(φ), b(φ))`.
    pub fn exp_moment(&self) -> Result<(f64, Vector)> {
        let m = self.moments()?;
        Ok((m.v, m.barycenter()))
    }

    /// Volumes of `(K−x)°ᵖ ∩ {⟨y,u⟩ ≥ 0}` and `(K−x)°ᵖ ∩ {⟨y,u⟩ ≤ 0}`.
    ///
    /// A side whose directions include one where the radial integral
    /// diverges is reported as infinite.
    pub fn halfspace_volumes(&self, u: &Direction) -> Result<(HalfVolume, HalfVolume)> {
        let n = self.dim();
        if u.dim() != n {
            return Err(Error::InvalidInput("direction dimension mismatch".into()));
        }
        let uv = u.as_vector();
        let fact = factorial(n);
        // Directions of non-integrability form a cap; test each side on the
        // classical support function first.
        let depth = self.ev.body().interior_depth(&self.x);
        if depth > 0.0 {
            if let (true, Ok(Some(polar))) = (
                self.ev.p() == PExponent::Infinity,
                polar_polytope(self.ev.body(), &self.x),
            ) {
                let (plus, minus) = crate::geometry::halfspace_split_volume(&polar, u)?;
                return Ok((
                    HalfVolume::Finite { value: plus, error: 1e-13 * plus },
                    HalfVolume::Finite { value: minus, error: 1e-13 * minus },
                ));
            }
        }
        let side = |sign: f64| -> Result<HalfVolume> {
            let result = match (n, self.spec.sphere) {
                (1, _) => self
                    .directional(&Vector::from_element(1, sign * uv[0].signum()))
                    .map(|r| (r.value[0], r.error[0])),
                (2, SphereRule::Auto) => {
                    let gamma = (sign * uv[1]).atan2(sign * uv[0]);
                    let worst = Cell::new(0.0f64);
                    self.angular(gamma - PI / 2.0, gamma + PI / 2.0, |alpha| {
                        let (s, c) = alpha.sin_cos();
                        let r = self.directional(&Vector::from_vec(vec![c, s]))?;
                        worst.set(worst.get().max(r.error[0] / r.value[0]));
                        Ok([r.value[0]])
                    })
                    .map(|e| (e.value[0], e.error[0] + worst.get() * e.value[0]))
                }
                (_, rule) => {
                    let pole = uv * sign;
                    let (nodes, _) = self.rule_nodes(rule, Some(&pole))?;
                    let mut acc = 0.0;
                    let mut err = 0.0;
                    let mut failure = None;
                    for (theta, w) in &nodes {
                        let c = theta.dot(&pole);
                        let share = if c > 1e-14 {
                            1.0
                        } else if c < -1e-14 {
                            0.0
                        } else {
                            0.5
                        };
                        if share == 0.0 {
                            continue;
                        }
                        match self.directional(theta) {
                            Ok(r) => {
                                acc += share * w * r.value[0];
                                err += share * w * r.error[0];
                            }
                            Err(e) => {
                                failure = Some(e);
                                break;
                            }
                        }
                    }
                    match failure {
                        Some(e) => Err(e),
                        None => Ok((acc, err)),
                    }
                }
            };
            match result {
                Ok((v, e)) => Ok(HalfVolume::Finite {
                    value: v / fact,
                    error: e / fact,
                }),
                Err(Error::NonIntegrable(_)) => Ok(HalfVolume::Infinite),
                Err(e) => Err(e),
            }
        };
        Ok((side(1.0)?, side(-1.0)?))
    }

    /// Approximate `∫ e^{−φ}` over Cartesian coordinates (dimension 2).
    pub fn cartesian_volume(&self) -> Result<(f64, f64)> {
        self.ensure_integrable()?;
        cartesian::cartesian_volume(self)
    }
}
