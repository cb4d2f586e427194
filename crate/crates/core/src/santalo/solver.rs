//! The Lp-Santaló point: the unique minimizer of `x ↦ M_p(K − x)`.
//!
//! `F(x) = log V(h_{p,K−x})` is convex with gradient `b(h_{p,K−x})` and Hessian
//! the covariance of the density `e^{−h_{p,K−x}}/V`, so the minimizer is the
//! zero of the barycenter map. Damped Newton with a halving line search that
//! keeps every iterate in the interior of `K`.

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::lp_polar::{ExpMoments, LpSupportEvaluator, PExponent, PolarFunctional};
use crate::quadrature::QuadratureSpec;
use crate::Vector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SantaloSolveOptions {
    /// Stop once `‖b(h_{p,K−x})‖ ≤ grad_tol`.
    pub grad_tol: f64,
    pub max_iter: usize,
    /// Halvings of the step before the line search gives up.
    pub max_halvings: usize,
    /// Above this Hessian condition number the step falls back to the gradient.
    pub max_condition: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for SantaloSolveOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-7,
            max_iter: 50,
            max_halvings: 40,
            max_condition: 1e10,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl SantaloSolveOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.grad_tol > 0.0) || self.max_iter == 0 || !(self.max_condition > 1.0) {
            return Err(Error::InvalidInput("solver tolerances must be positive".into()));
        }
        self.quadrature.validate()
    }
}

#[derive(Debug, Clone)]
pub struct SantaloSolution {
    pub point: Vector,
    /// `‖b(h_{p,K−x})‖` at the returned point.
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `log V` at each accepted iterate, starting from the barycenter.
    pub objective: Vec<f64>,
    /// Moments of `e^{−h_{p,K−x}}` at the returned point.
    pub moments: ExpMoments,
}

impl SantaloSolution {
    /// The solution, or `MaxIterExceeded` when the gradient tolerance was not met.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::MaxIterExceeded {
                iterations: self.iterations,
                residual: self.gradient_norm,
            })
        }
    }
}

/// `s_p(K)` starting from the barycenter of `K`.
pub fn santalo_point(body: &ConvexBody, p: PExponent, opts: &SantaloSolveOptions) -> Result<SantaloSolution> {
    let ev = LpSupportEvaluator::new(body, p)?;
    solve(&ev, body.barycenter()?, opts)
}

/// `s_p` for a prepared evaluator from an arbitrary interior start.
pub fn solve(ev: &LpSupportEvaluator, start: Vector, opts: &SantaloSolveOptions) -> Result<SantaloSolution> {
    opts.validate()?;
    let body = ev.body();
    if !(body.interior_depth(&start) > 0.0) {
        return Err(Error::NonIntegrable("the starting point is not interior".into()));
    }
    let moments_at = |x: &Vector| PolarFunctional::new(ev, x.clone(), opts.quadrature).moments();
    let mut x = start;
    let mut m = moments_at(&x)?;
    let mut objective = vec![m.v.ln()];
    let mut iterations = 0;
    loop {
        let b = m.barycenter();
        let gnorm = b.norm();
        if gnorm <= opts.grad_tol || iterations >= opts.max_iter {
            return Ok(SantaloSolution {
                point: x,
                gradient_norm: gnorm,
                iterations,
                converged: gnorm <= opts.grad_tol,
                objective,
                moments: m,
            });
        }
        iterations += 1;
        let direction = newton_direction(&m, &b, opts.max_condition);
        let slope = b.dot(&direction);
        let f0 = m.v.ln();
        let noise = 4.0 * m.rel_error();
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial = &x + &direction * alpha;
            if body.interior_depth(&trial) > 0.0 {
                match moments_at(&trial) {
                    Ok(mt) => {
                        let ft = mt.v.ln();
                        let armijo = ft <= f0 + 1e-4 * alpha * slope + noise + 4.0 * mt.rel_error();
                        let progress = ft < f0 || mt.barycenter().norm() < gnorm;
                        if armijo && progress {
                            accepted = Some((trial, mt));
                            break;
                        }
                    }
                    Err(Error::NonIntegrable(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((xt, mt)) => {
                x = xt;
                m = mt;
                objective.push(m.v.ln());
            }
            None => {
                // the line search stalled; report the best iterate unconverged
                return Ok(SantaloSolution {
                    point: x,
                    gradient_norm: gnorm,
                    iterations,
                    converged: false,
                    objective,
                    moments: m,
                });
            }
        }
    }
}

fn newton_direction(m: &ExpMoments, b: &Vector, max_condition: f64) -> Vector {
    let eig = m.covariance().symmetric_eigen();
    let hi = eig.eigenvalues.max();
    let lo = eig.eigenvalues.min();
    if !(lo > 0.0) || hi / lo > max_condition {
        return -b / hi.max(f64::MIN_POSITIVE);
    }
    let q = &eig.eigenvectors;
    let coeffs = q.transpose() * b;
    let scaled = Vector::from_fn(coeffs.len(), |i, _| coeffs[i] / eig.eigenvalues[i]);
    -(q * scaled)
}
