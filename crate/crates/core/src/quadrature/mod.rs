//! Numerical substrate: exponential integrals over simplices, adaptive
//! Gauss–Kronrod, radial moments with convexity tail bounds, sphere rules.

pub mod divided;
pub mod gauss_kronrod;
pub mod radial;
pub mod sphere;
mod spec;

pub use divided::{
    exp_divided_difference, exp_integral_simplex, exp_integral_simplex_scaled, DividedDifferenceTable,
};
pub use gauss_kronrod::{gauss_legendre, integrate, integrate_scalar, AdaptiveOptions, Estimate};
pub use radial::{radial_integral, radial_moments, RadialEstimate, RadialOptions};
pub use sphere::{sphere_area, sphere_nodes, SphereNodes};
pub use spec::{QuadratureSpec, SphereRule};
