use super::special::log_ball_average;
use super::PExponent;
use crate::error::Result;
use crate::geometry::{factorial, ConvexBody};
use crate::quadrature::divided::exp_divided_difference_sorted;
use crate::{Matrix, Vector};

/// Simplices of a triangulation as vertex indices plus the weight
/// `n! |S| / |K|`.
#[derive(Debug, Clone)]
struct WeightedSimplex {
    idx: [usize; 4],
    weight: f64,
}

#[derive(Debug, Clone)]
enum Kind {
    Polytope {
        /// Row-major `m × n`.
        coords: Vec<f64>,
        m: usize,
        simplices: Vec<WeightedSimplex>,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    Affine {
        base: Box<LpSupportEvaluator>,
        transpose: Matrix,
        shift: Vector,
    },
}

/// Evaluates `h_{p,K}(y) = (1/p) log( ∫_K e^{p⟨x,y⟩} dx / |K| )`, and the
/// classical support function for `p = ∞`.
#[derive(Debug, Clone)]
pub struct LpSupportEvaluator {
    body: ConvexBody,
    p: PExponent,
    volume: f64,
    kind: Kind,
}

const STACK_VERTICES: usize = 128;

impl LpSupportEvaluator {
    pub fn new(body: &ConvexBody, p: PExponent) -> Result<Self> {
        let volume = body.volume()?;
        let n = body.dim();
        let kind = match body {
            ConvexBody::VPolytope(poly) => {
                let verts = poly.vertices();
                let m = verts.len();
                let mut coords = Vec::with_capacity(m * n);
                for v in verts {
                    coords.extend(v.iter());
                }
                let fact = factorial(n);
                let simplices = poly
                    .simplices()?
                    .iter()
                    .map(|s| {
                        let mut idx = [0usize; 4];
                        for (slot, sv) in idx.iter_mut().zip(s.vertices()) {
                            *slot = verts
                                .iter()
                                .position(|v| v == sv)
                                .expect("triangulation uses hull vertices");
                        }
                        WeightedSimplex {
                            idx,
                            weight: fact * s.volume() / volume,
                        }
                    })
                    .collect();
                Kind::Polytope { coords, m, simplices }
            }
            ConvexBody::Ball(b) => Kind::Ball {
                center: b.center.clone(),
                radius: b.radius,
            },
            ConvexBody::AffineImage(a) => Kind::Affine {
                base: Box::new(Self::new(a.base(), p)?),
                transpose: a.matrix().transpose(),
                shift: a.shift().clone(),
            },
        };
        Ok(Self {
            body: body.clone(),
            p,
            volume,
            kind,
        })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn p(&self) -> PExponent {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// `|K|`.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `h_{p,K}(y)`.
    pub fn h(&self, y: &Vector) -> f64 {
        let p = match self.p {
            PExponent::Infinity => return self.body.support(y),
            PExponent::Finite(p) => p,
        };
        if y.iter().all(|&c| c == 0.0) {
            return 0.0;
        }
        match &self.kind {
            Kind::Polytope { coords, m, simplices } => {
                let n = y.len();
                let mut stack = [0.0f64; STACK_VERTICES];
                let mut heap = Vec::new();
                let proj: &mut [f64] = if *m <= STACK_VERTICES {
                    &mut stack[..*m]
                } else {
                    heap.resize(*m, 0.0);
                    &mut heap
                };
                let mut top = f64::NEG_INFINITY;
                for (i, slot) in proj.iter_mut().enumerate() {
                    let row = &coords[i * n..(i + 1) * n];
                    let mut s = 0.0;
                    for j in 0..n {
                        s += row[j] * y[j];
                    }
                    *slot = p * s;
                    top = top.max(*slot);
                }
                let k = n + 1;
                let mut total = 0.0;
                let mut nodes = [0.0f64; 4];
                for s in simplices {
                    for j in 0..k {
                        nodes[j] = proj[s.idx[j]] - top;
                    }
                    let nodes = &mut nodes[..k];
                    sort_small(nodes);
                    total += s.weight * exp_divided_difference_sorted(nodes);
                }
                (top + total.ln()) / p
            }
            Kind::Ball { center, radius } => {
                let a = p * radius * y.norm();
                center.dot(y) + log_ball_average(center.len(), a) / p
            }
            Kind::Affine { base, transpose, shift } => base.h(&(transpose * y)) + shift.dot(y),
        }
    }

    /// `h_{p,K−x}(y) = h_{p,K}(y) − ⟨x, y⟩`.
    pub fn h_translated(&self, y: &Vector, x: &Vector) -> f64 {
        self.h(y) - x.dot(y)
    }
}

fn sort_small(a: &mut [f64]) {
    for i in 1..a.len() {
        let mut j = i;
        while j > 0 && a[j - 1] > a[j] {
            a.swap(j - 1, j);
            j -= 1;
        }
    }
}

/// `h_{p,K}(y)` for a prepared evaluator.
pub fn h_p(ev: &LpSupportEvaluator, y: &Vector) -> f64 {
    ev.h(y)
}
