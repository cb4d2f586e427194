//! Divided differences of `exp` and exponential integrals over simplices.
//!
//! `∫_S e^{⟨x,y⟩} dx = n! · |S| · e[a_0, …, a_n]` with `a_i = ⟨v_i, y⟩`, where
//! `e[…]` is the divided difference of `t ↦ e^t`. Nodes are sorted, and any
//! sub-range whose spread is at most [`CLUSTER_SPREAD`] is evaluated by the
//! confluent Taylor series about its mean
//! `e^c Σ_k h_k(a − c) / (m + k)!`, where `h_k` are the complete homogeneous
//! symmetric polynomials. Wider ranges use the recurrence, whose denominators
//! then exceed the spread threshold, so cancellation stays bounded.

use crate::error::Result;
use crate::geometry::Simplex;
use crate::Vector;

/// Sub-ranges of nodes this close together use the Taylor form.
pub const CLUSTER_SPREAD: f64 = 1.0;

const MAX_NODES: usize = 8;
const TAYLOR_TERMS: usize = 40;

/// `1/k!` for `k < MAX_NODES + TAYLOR_TERMS`.
const INV_FACT: [f64; MAX_NODES + TAYLOR_TERMS] = {
    let mut t = [1.0f64; MAX_NODES + TAYLOR_TERMS];
    let mut k = 1;
    while k < t.len() {
        t[k] = t[k - 1] / k as f64;
        k += 1;
    }
    t
};

/// Confluent evaluation of `e[a_lo..=a_hi]` about the mean of the nodes.
fn taylor(nodes: &[f64]) -> f64 {
    let m = nodes.len() - 1;
    let c = nodes.iter().sum::<f64>() / nodes.len() as f64;
    let dmax = nodes.iter().map(|a| (a - c).abs()).fold(0.0, f64::max);
    // The k-th term is at most dmax^k / (m! k!) while the sum is at least
    // e^{-dmax} / m! (mean value form), so stop once dmax^k e^{dmax} / k! is
    // below double precision. e^{dmax} ≤ 3 since dmax ≤ CLUSTER_SPREAD.
    let mut terms = 1;
    let mut ratio = 3.0;
    while terms < TAYLOR_TERMS && ratio > 1e-17 {
        ratio *= dmax / terms as f64;
        terms += 1;
    }
    let mut h = [0.0f64; TAYLOR_TERMS];
    h[0] = 1.0;
    for &a in nodes {
        let d = a - c;
        for k in 1..terms {
            h[k] += d * h[k - 1];
        }
    }
    // Σ_k h_k / (m + k)!, accumulated from the small end.
    let mut sum = 0.0;
    for k in (0..terms).rev() {
        sum += h[k] * INV_FACT[m + k];
    }
    c.exp() * sum
}

/// `e[a, b]` for `a ≤ b`, through `expm1` when the nodes are close.
fn pair(a: f64, b: f64) -> f64 {
    let d = b - a;
    if d > CLUSTER_SPREAD {
        (b.exp() - a.exp()) / d
    } else if d == 0.0 {
        a.exp()
    } else {
        a.exp() * (d.exp_m1() / d)
    }
}

/// `e[a_0, …, a_n]` for sorted nodes.
fn sorted_divided_difference(a: &[f64]) -> f64 {
    let n = a.len();
    if n == 2 {
        return pair(a[0], a[1]);
    }
    if a[n - 1] - a[0] <= CLUSTER_SPREAD {
        return taylor(a);
    }
    debug_assert!(n <= MAX_NODES);
    // t[i][j] = e[a_i..=a_j], filled by increasing width.
    let mut t = [[0.0f64; MAX_NODES]; MAX_NODES];
    for i in 0..n {
        t[i][i] = a[i].exp();
    }
    for width in 1..n {
        for i in 0..n - width {
            let j = i + width;
            let spread = a[j] - a[i];
            t[i][j] = if width == 1 {
                pair(a[i], a[j])
            } else if spread <= CLUSTER_SPREAD {
                taylor(&a[i..=j])
            } else {
                (t[i + 1][j] - t[i][j - 1]) / spread
            };
        }
    }
    t[0][n - 1]
}

/// Divided difference of `exp` at the given nodes (any order, repeats allowed).
pub fn exp_divided_difference(nodes: &[f64]) -> f64 {
    assert!(
        !nodes.is_empty() && nodes.len() <= MAX_NODES,
        "between 1 and {MAX_NODES} nodes supported"
    );
    let mut a = [0.0f64; MAX_NODES];
    a[..nodes.len()].copy_from_slice(nodes);
    let a = &mut a[..nodes.len()];
    a.sort_by(|x, y| x.partial_cmp(y).expect("finite nodes"));
    sorted_divided_difference(a)
}

/// Same as [`exp_divided_difference`] for nodes already sorted ascending.
pub fn exp_divided_difference_sorted(nodes: &[f64]) -> f64 {
    sorted_divided_difference(nodes)
}

/// Newton-form divided differences `e[a_0], e[a_0,a_1], …, e[a_0..a_n]` of
/// `exp` on a fixed node sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDifferenceTable {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl DividedDifferenceTable {
    pub fn new(nodes: &[f64]) -> Self {
        let values = (1..=nodes.len())
            .map(|k| exp_divided_difference(&nodes[..k]))
            .collect();
        Self {
            nodes: nodes.to_vec(),
            values,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `e[a_0, …, a_n]`.
    pub fn highest(&self) -> f64 {
        *self.values.last().expect("at least one node")
    }

    /// Newton interpolant of `exp` through the nodes, evaluated at `t`.
    pub fn interpolate(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for k in (0..self.values.len()).rev() {
            acc = acc * (t - self.nodes[k]) + self.values[k];
        }
        acc
    }
}

/// `∫_S e^{⟨x,y⟩} dx`.
pub fn exp_integral_simplex(s: &Simplex, y: &Vector) -> f64 {
    let (log_scale, reduced) = exp_integral_simplex_scaled(s, y);
    reduced * log_scale.exp()
}

/// `(M, I)` with `∫_S e^{⟨x,y⟩} dx = e^M · I`, `M = max_i ⟨v_i, y⟩`; overflow-free.
pub fn exp_integral_simplex_scaled(s: &Simplex, y: &Vector) -> (f64, f64) {
    let vs = s.vertices();
    let mut a = [0.0f64; MAX_NODES];
    for (i, v) in vs.iter().enumerate() {
        a[i] = v.dot(y);
    }
    let a = &mut a[..vs.len()];
    let m = a.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for x in a.iter_mut() {
        *x -= m;
    }
    a.sort_by(|x, y| x.partial_cmp(y).expect("finite exponent"));
    let n = vs.len() - 1;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    (m, fact * s.volume() * sorted_divided_difference(a))
}

/// Convenience wrapper that validates the simplex first.
pub fn exp_integral(vertices: Vec<Vector>, y: &Vector) -> Result<f64> {
    Ok(exp_integral_simplex(&Simplex::new(vertices)?, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    #[test]
    fn two_node_values() {
        for &(a, b) in &[(0.0f64, 1e-9f64), (0.0, 0.5), (0.0, 1.0), (0.0, 3.0), (-40.0, 2.0), (-700.0, 0.0)] {
            let exact = if (b - a).abs() < 1e-6 {
                a.exp() * (1.0 + (b - a) / 2.0)
            } else {
                (b.exp() - a.exp()) / (b - a)
            };
            let got = exp_divided_difference(&[a, b]);
            assert!((got - exact).abs() <= 1e-14 * exact, "{a} {b}: {got} vs {exact}");
        }
    }

    #[test]
    fn confluent_limit() {
        // e[c, c, …, c] (m+1 times) = e^c / m!
        for m in 0..7 {
            let nodes = vec![0.7; m + 1];
            let fact: f64 = (1..=m).map(|k| k as f64).product();
            let exact = 0.7f64.exp() / fact;
            assert!((exp_divided_difference(&nodes) - exact).abs() < 1e-15 * exact);
        }
    }

    #[test]
    fn known_simplex_integrals() {
        assert!((exp_integral(vec![v(&[0.0]), v(&[1.0])], &v(&[0.0])).unwrap() - 1.0).abs() < 1e-15);
        let one = exp_integral(vec![v(&[0.0]), v(&[1.0])], &v(&[1.0])).unwrap();
        assert!((one - (E - 1.0)).abs() < 1e-15);
        let tri = exp_integral(vec![v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])], &v(&[1.0, 0.0])).unwrap();
        assert!((tri - (E - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn table_interpolates_exp() {
        let t = DividedDifferenceTable::new(&[-1.0, 0.0, 0.5, 2.0]);
        for &x in t.nodes() {
            assert!((t.interpolate(x) - x.exp()).abs() < 1e-13);
        }
        assert!(t.values().iter().all(|&v| v > 0.0));
    }
}
