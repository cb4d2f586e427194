//! Numerical toolkit for Lp-polarity of convex bodies.
//!
//! The crate computes the Lp-support function `h_{p,K}`, the near-norm of the
//! Lp-polar body `K°ᵖ`, Lp-polar volumes and Lp-Mahler volumes, locates the
//! Lp-Santaló point, performs exact Steiner symmetrization of polytopes, and
//! checks the inequalities that link these objects.
//!
//! Modules:
//! - [`geometry`]: convex bodies, hulls, exact volumes/barycenters, fibers, Steiner symmetrals.
//! - [`quadrature`]: exponential integrals over simplices, adaptive Gauss–Kronrod,
//!   radial integrals with convexity tail bounds, spherical rules.
//! - [`lp_polar`]: `h_{p,K}`, near-norms, polar volumes, exponential moments, `M_p`.
//! - [`santalo`]: Santaló-point solver, separating translations, the Steiner
//!   pipeline, reference values and verification reports.

pub mod corpus;
pub mod error;
pub mod geometry;
pub mod lp_polar;
pub mod quadrature;
pub mod santalo;

pub use error::{Error, Result};
pub use geometry::{ConvexBody, Direction, Simplex};
pub use lp_polar::{mahler_volume, LpSupportEvaluator, MahlerVolume, PExponent, PolarFunctional};
pub use quadrature::QuadratureSpec;


/// Dense column vector used for points and directions.
pub type Vector = nalgebra::DVector<f64>;
/// Dense matrix used for linear maps.
pub type Matrix = nalgebra::DMatrix<f64>;
