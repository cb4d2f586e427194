//! Small dense two-phase simplex method.
//!
//! Solves `maximize c·x  subject to  A x = b, x >= 0` on a full tableau.
//! Pivoting follows Bland's rule (lowest eligible index for both the
//! entering and the leaving variable), so the method cannot cycle. Problem
//! sizes here are tiny (a few dozen columns), which makes the dense tableau
//! the simplest correct choice.

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

/// Equality-form linear program.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
}

impl LinearProgram {
    /// `rows[i] · x = rhs[i]`, `x >= 0`, objective `cost · x` (maximized).
    pub fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>, cost: Vec<f64>) -> Self {
        assert_eq!(rows.len(), rhs.len(), "one rhs entry per row");
        for r in &rows {
            assert_eq!(r.len(), cost.len(), "row width must match cost length");
        }
        Self { rows, rhs, cost }
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.cost)
    }

    pub fn minimize(&self) -> LpOutcome {
        let neg: Vec<f64> = self.cost.iter().map(|c| -c).collect();
        match Tableau::build(self).solve(&neg) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        }
    }
}

struct Tableau {
    /// Constraint rows followed by the objective row; last column is the rhs.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_orig: usize,
    n_rows: usize,
    scale: f64,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let k = lp.cost.len();
        let width = k + m + 1;
        let mut t = vec![vec![0.0; width]; m + 1];
        let mut scale = 1.0f64;
        for i in 0..m {
            let flip = if lp.rhs[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..k {
                t[i][j] = flip * lp.rows[i][j];
                scale = scale.max(t[i][j].abs());
            }
            t[i][k + i] = 1.0;
            t[i][width - 1] = flip * lp.rhs[i];
            scale = scale.max(t[i][width - 1].abs());
        }
        Self {
            t,
            basis: (k..k + m).collect(),
            n_orig: k,
            n_rows: m,
            scale,
        }
    }

    fn rhs_col(&self) -> usize {
        self.t[0].len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.t[row].len();
        let p = self.t[row][col];
        for j in 0..w {
            self.t[row][j] /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for j in 0..w {
                    r[j] -= f * pivot_row[j];
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations on the current objective row, restricted to
    /// columns `< allowed`. Returns false when unbounded.
    fn iterate(&mut self, allowed: usize) -> bool {
        let obj = self.n_rows;
        let rhs = self.rhs_col();
        let tol = PIVOT_EPS * self.scale;
        // Bland's rule guarantees termination; the cap only guards against
        // tolerance-induced ping-pong.
        let max_iter = 50 * (allowed + self.n_rows + 1);
        for _ in 0..max_iter {
            let entering = (0..allowed).find(|&j| self.t[obj][j] < -tol);
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.n_rows {
                let a = self.t[i][col];
                if a > tol {
                    let ratio = self.t[i][rhs] / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - tol
                                || (ratio <= br + tol && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
        true
    }

    fn solve(mut self, cost: &[f64]) -> LpOutcome {
        let m = self.n_rows;
        let k = self.n_orig;
        let rhs = self.rhs_col();
        let obj = m;

        // Phase 1: maximize -(sum of artificials).
        for j in 0..=rhs {
            self.t[obj][j] = 0.0;
        }
        for i in 0..m {
            for j in 0..k {
                self.t[obj][j] -= self.t[i][j];
            }
            self.t[obj][rhs] -= self.t[i][rhs];
        }
        self.iterate(k + m);
        let infeas_tol = 1e-9 * self.scale;
        if self.t[obj][rhs] < -infeas_tol {
            return LpOutcome::Infeasible;
        }

        // Drive remaining artificials out of the basis; redundant rows keep
        // an artificial at level zero, which is harmless once its column is
        // excluded from pricing.
        for i in 0..m {
            if self.basis[i] >= k {
                if let Some(col) = (0..k).find(|&j| self.t[i][j].abs() > 1e-9 * self.scale) {
                    self.pivot(i, col);
                }
            }
        }

        // Phase 2.
        for j in 0..=rhs {
            self.t[obj][j] = 0.0;
        }
        for j in 0..k {
            self.t[obj][j] = -cost[j];
        }
        for i in 0..m {
            let b = self.basis[i];
            if b < k && cost[b] != 0.0 {
                let cb = cost[b];
                for j in 0..=rhs {
                    let v = self.t[i][j];
                    self.t[obj][j] += cb * v;
                }
            }
        }
        if !self.iterate(k) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![0.0; k];
        for i in 0..m {
            if self.basis[i] < k {
                x[self.basis[i]] = self.t[i][rhs];
            }
        }
        let value = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(o: LpOutcome) -> (Vec<f64>, f64) {
        match o {
            LpOutcome::Optimal { x, value } => (x, value),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y s.t. x + s1 = 4, 2y + s2 = 12, 3x + 2y + s3 = 18.
        let lp = LinearProgram::new(
            vec![
                vec![1.0, 0.0, 1.0, 0.0, 0.0],
                vec![0.0, 2.0, 0.0, 1.0, 0.0],
                vec![3.0, 2.0, 0.0, 0.0, 1.0],
            ],
            vec![4.0, 12.0, 18.0],
            vec![3.0, 5.0, 0.0, 0.0, 0.0],
        );
        let (x, v) = optimal(lp.maximize());
        assert!((v - 36.0).abs() < 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1 and x + y = 2.
        let lp = LinearProgram::new(
            vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            vec![1.0, 2.0],
            vec![1.0, 0.0],
        );
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // x - y = 0, maximize x.
        let lp = LinearProgram::new(vec![vec![1.0, -1.0]], vec![0.0], vec![1.0, 0.0]);
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        // -x - y = -1 twice (redundant), minimize x - y.
        let lp = LinearProgram::new(
            vec![vec![-1.0, -1.0], vec![-2.0, -2.0]],
            vec![-1.0, -2.0],
            vec![1.0, -1.0],
        );
        let (x, v) = optimal(lp.minimize());
        assert!((v + 1.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_vertex_does_not_cycle() {
        // Beale's classic cycling example (for Dantzig's rule), in equality form.
        let lp = LinearProgram::new(
            vec![
                vec![0.25, -8.0, -1.0, 9.0, 1.0, 0.0, 0.0],
                vec![0.5, -12.0, -0.5, 3.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            ],
            vec![0.0, 0.0, 1.0],
            vec![0.75, -20.0, 0.5, -6.0, 0.0, 0.0, 0.0],
        );
        let (_, v) = optimal(lp.maximize());
        assert!((v - 1.25).abs() < 1e-10);
    }
}
