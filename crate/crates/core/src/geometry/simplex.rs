use crate::error::{Error, Result};
use crate::{Matrix, Vector};

/// Number of simplices `n+1` points span; `n!` for the volume formula.
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A nondegenerate `n`-simplex in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<Vector>,
    volume: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::DegenerateBody("simplex without vertices".into()));
        };
        let n = first.len();
        if vertices.len() != n + 1 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidInput(format!(
                "an {n}-simplex needs {} vertices of dimension {n}",
                n + 1
            )));
        }
        let volume = signed_volume(&vertices).abs();
        let scale = vertices
            .iter()
            .map(|v| (v - first).norm())
            .fold(0.0, f64::max);
        if !(volume > 1e-14 * scale.powi(n as i32)) {
            return Err(Error::DegenerateBody("simplex has zero volume".into()));
        }
        Ok(Self { vertices, volume })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn centroid(&self) -> Vector {
        let mut c = Vector::zeros(self.dim());
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    /// `∫_S x xᵀ dx`.
    pub fn second_moment(&self) -> Matrix {
        let n = self.dim();
        let mut sum = Vector::zeros(n);
        let mut outer = Matrix::zeros(n, n);
        for v in &self.vertices {
            sum += v;
            outer += v * v.transpose();
        }
        (outer + &sum * sum.transpose()) * (self.volume / ((n + 1) * (n + 2)) as f64)
    }

    /// Indicates whether `x` lies in the simplex, up to `tol` in barycentric coordinates.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        let n = self.dim();
        let v0 = &self.vertices[0];
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.set_column(j, &(&self.vertices[j + 1] - v0));
        }
        match m.lu().solve(&(x - v0)) {
            Some(lam) => lam.iter().all(|&l| l >= -tol) && lam.sum() <= 1.0 + tol,
            None => false,
        }
    }
}

/// `det[v_1−v_0, …, v_n−v_0] / n!`.
pub fn signed_volume(vertices: &[Vector]) -> f64 {
    let n = vertices[0].len();
    let v0 = &vertices[0];
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        m.set_column(j, &(&vertices[j + 1] - v0));
    }
    m.determinant() / factorial(n)
}
