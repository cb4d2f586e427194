//! Quadrature nodes on the unit sphere `S^{n−1}`.

use super::gauss_kronrod::gauss_legendre;
use super::spec::{QuadratureSpec, SphereRule};
use crate::error::{Error, Result};
use crate::geometry::unit_ball_volume;
use crate::Vector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

/// Surface area of `S^{n−1}`.
pub fn sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

#[derive(Debug, Clone)]
pub struct SphereNodes {
    pub nodes: Vec<(Vector, f64)>,
    /// Set when the rule is a random sample rather than a deterministic design.
    pub monte_carlo: bool,
}

pub fn uniform_angle(m: usize) -> Vec<(Vector, f64)> {
    let w = 2.0 * PI / m as f64;
    (0..m)
        .map(|k| {
            let a = 2.0 * PI * (k as f64 + 0.5) / m as f64;
            (Vector::from_vec(vec![a.cos(), a.sin()]), w)
        })
        .collect()
}

/// Gauss–Legendre in `cos θ` times the trapezoid rule in azimuth.
pub fn gauss_product(polar: usize, azimuth: usize) -> Vec<(Vector, f64)> {
    let mut out = Vec::with_capacity(polar * azimuth);
    for (z, w) in gauss_legendre(polar) {
        let rho = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..azimuth {
            let phi = 2.0 * PI * (k as f64 + 0.5) / azimuth as f64;
            out.push((
                Vector::from_vec(vec![rho * phi.cos(), rho * phi.sin(), z]),
                w * 2.0 * PI / azimuth as f64,
            ));
        }
    }
    out
}

/// Fibonacci lattice with equal weights `4π/m`.
pub fn fibonacci(m: usize) -> Vec<(Vector, f64)> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let w = 4.0 * PI / m as f64;
    (0..m)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            (Vector::from_vec(vec![rho * phi.cos(), rho * phi.sin(), z]), w)
        })
        .collect()
}

/// Uniform random directions with equal weights `|S^{n−1}| / samples`.
pub fn monte_carlo(n: usize, samples: usize, seed: u64) -> Vec<(Vector, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = sphere_area(n) / samples as f64;
    (0..samples)
        .map(|_| loop {
            let g = Vector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let norm = g.norm();
            if norm > 1e-12 {
                break (g / norm, w);
            }
        })
        .collect()
}

pub fn sphere_nodes(n: usize, spec: &QuadratureSpec) -> Result<SphereNodes> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    if n == 1 {
        return Ok(SphereNodes {
            nodes: vec![
                (Vector::from_element(1, 1.0), 1.0),
                (Vector::from_element(1, -1.0), 1.0),
            ],
            monte_carlo: false,
        });
    }
    let exact = |nodes| Ok(SphereNodes { nodes, monte_carlo: false });
    let mc = |samples| {
        Ok(SphereNodes {
            nodes: monte_carlo(n, samples, spec.mc_seed),
            monte_carlo: true,
        })
    };
    let unsupported = |rule: &str| {
        Err(Error::UnsupportedDimension {
            dim: n,
            reason: format!("{rule} rule is defined for a different dimension"),
        })
    };
    match (spec.sphere, n) {
        (SphereRule::Auto, 2) => exact(uniform_angle(SphereRule::DEFAULT_CIRCLE_NODES)),
        (SphereRule::Auto, 3) => {
            let (p, a) = SphereRule::DEFAULT_GAUSS_PRODUCT;
            exact(gauss_product(p, a))
        }
        (SphereRule::Auto, _) => mc(spec.mc_samples),
        (SphereRule::Count { nodes }, 2) => exact(uniform_angle(nodes)),
        (SphereRule::Count { nodes }, 3) => exact(fibonacci(nodes)),
        (SphereRule::Count { nodes }, _) => mc(nodes),
        (SphereRule::UniformAngle { nodes }, 2) => exact(uniform_angle(nodes)),
        (SphereRule::UniformAngle { .. }, _) => unsupported("uniform-angle"),
        (SphereRule::GaussProduct { polar, azimuth }, 3) => exact(gauss_product(polar, azimuth)),
        (SphereRule::GaussProduct { .. }, _) => unsupported("Gauss product"),
        (SphereRule::Fibonacci { nodes }, 3) => exact(fibonacci(nodes)),
        (SphereRule::Fibonacci { .. }, _) => unsupported("Fibonacci"),
        (SphereRule::MonteCarlo { samples }, _) => mc(samples),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(nodes: &[(Vector, f64)]) -> f64 {
        nodes.iter().map(|n| n.1).sum()
    }

    #[test]
    fn weights_sum_to_area() {
        assert!((total(&uniform_angle(4)) - 2.0 * PI).abs() < 1e-14);
        assert!((total(&fibonacci(1000)) - 4.0 * PI).abs() < 1e-6 * 4.0 * PI);
        assert!((total(&gauss_product(8, 16)) - 4.0 * PI).abs() < 1e-13);
        assert!((total(&monte_carlo(5, 100, 3)) - sphere_area(5)).abs() < 1e-12);
        let spec = QuadratureSpec::default();
        let one = sphere_nodes(1, &spec).unwrap();
        assert_eq!(one.nodes.len(), 2);
        assert_eq!(total(&one.nodes), 2.0);
    }

    #[test]
    fn gauss_product_integrates_low_degree_exactly() {
        // ∫ z² dσ = 4π/3, ∫ x² y² dσ = 4π/15
        let nodes = gauss_product(6, 12);
        let z2: f64 = nodes.iter().map(|(t, w)| w * t[2] * t[2]).sum();
        let x2y2: f64 = nodes.iter().map(|(t, w)| w * t[0] * t[0] * t[1] * t[1]).sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((x2y2 - 4.0 * PI / 15.0).abs() < 1e-13);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a = monte_carlo(4, 50, 11);
        let b = monte_carlo(4, 50, 11);
        assert!(a.iter().zip(&b).all(|(x, y)| x.0 == y.0 && x.1 == y.1));
        let c = monte_carlo(4, 50, 12);
        assert!(a[0].0 != c[0].0);
    }

    #[test]
    fn rule_dimension_mismatch() {
        let spec = QuadratureSpec {
            sphere: SphereRule::Fibonacci { nodes: 10 },
            ..QuadratureSpec::default()
        };
        assert!(matches!(sphere_nodes(4, &spec), Err(Error::UnsupportedDimension { .. })));
        let auto = sphere_nodes(4, &QuadratureSpec::default()).unwrap();
        assert!(auto.monte_carlo);
    }
}
