//! Adaptive Gauss–Kronrod (7/15) integration of vector-valued integrands.
//!
//! Every component shares the same subdivision. A component is converged
//! when its error estimate is below `max(abs_tol, rel_tol · ∫|f_k|)`; using
//! `∫|f_k|` rather than `|∫f_k|` keeps signed components that cancel (first
//! moments over the sphere, say) from forcing endless refinement.

use crate::error::Result;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the center 7.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_subdivisions: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const M: usize> {
    pub value: [f64; M],
    pub error: [f64; M],
    /// `∫|f_k|` on the same rule; the reference magnitude for relative tolerances.
    pub magnitude: [f64; M],
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Piece<const M: usize> {
    a: f64,
    b: f64,
    value: [f64; M],
    error: [f64; M],
    magnitude: [f64; M],
}

fn qk15<const M: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Piece<M>>
where
    F: FnMut(f64) -> Result<[f64; M]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut resk = [0.0; M];
    let mut resg = [0.0; M];
    let mut resabs = [0.0; M];
    let mut fv1 = [[0.0; M]; 7];
    let mut fv2 = [[0.0; M]; 7];
    for k in 0..M {
        resk[k] = fc[k] * WGK[7];
        resg[k] = fc[k] * WG[3];
        resabs[k] = fc[k].abs() * WGK[7];
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        for k in 0..M {
            resk[k] += WGK[j] * (f1[k] + f2[k]);
            resabs[k] += WGK[j] * (f1[k].abs() + f2[k].abs());
            if j % 2 == 1 {
                resg[k] += WG[j / 2] * (f1[k] + f2[k]);
            }
        }
        fv1[j] = f1;
        fv2[j] = f2;
    }
    let mut error = [0.0; M];
    let mut value = [0.0; M];
    let mut magnitude = [0.0; M];
    for k in 0..M {
        let mean = 0.5 * resk[k];
        let mut resasc = WGK[7] * (fc[k] - mean).abs();
        for j in 0..7 {
            resasc += WGK[j] * ((fv1[j][k] - mean).abs() + (fv2[j][k] - mean).abs());
        }
        let h = half.abs();
        resasc *= h;
        let mut err = ((resk[k] - resg[k]) * half).abs();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        let abs_k = resabs[k] * h;
        if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * abs_k);
        }
        value[k] = resk[k] * half;
        error[k] = err;
        magnitude[k] = abs_k;
    }
    Ok(Piece {
        a,
        b,
        value,
        error,
        magnitude,
    })
}

/// Incremental adaptive integrator: intervals can be added one at a time
/// (the radial integrator grows its range this way) and then refined together.
pub struct Adaptive<const M: usize> {
    opts: AdaptiveOptions,
    pieces: Vec<Piece<M>>,
    evaluations: usize,
}

impl<const M: usize> Adaptive<M> {
    pub fn new(opts: AdaptiveOptions) -> Self {
        Self {
            opts,
            pieces: Vec::new(),
            evaluations: 0,
        }
    }

    pub fn add_interval<F>(&mut self, f: &mut F, a: f64, b: f64) -> Result<()>
    where
        F: FnMut(f64) -> Result<[f64; M]>,
    {
        if b > a {
            self.pieces.push(qk15(f, a, b)?);
            self.evaluations += 15;
        }
        Ok(())
    }

    pub fn totals(&self) -> Estimate<M> {
        let mut est = Estimate {
            value: [0.0; M],
            error: [0.0; M],
            magnitude: [0.0; M],
            evaluations: self.evaluations,
            converged: false,
        };
        for p in &self.pieces {
            for k in 0..M {
                est.value[k] += p.value[k];
                est.error[k] += p.error[k];
                est.magnitude[k] += p.magnitude[k];
            }
        }
        est.converged = self.converged(&est);
        est
    }

    fn tolerance(&self, magnitude: f64) -> f64 {
        self.opts.abs_tol.max(self.opts.rel_tol * magnitude)
    }

    fn converged(&self, est: &Estimate<M>) -> bool {
        (0..M).all(|k| est.error[k] <= self.tolerance(est.magnitude[k]))
    }

    /// Bisects the worst interval until every component meets its tolerance
    /// or the subdivision budget is spent.
    pub fn refine<F>(mut self, f: &mut F) -> Result<Estimate<M>>
    where
        F: FnMut(f64) -> Result<[f64; M]>,
    {
        let mut splits = 0;
        loop {
            let est = self.totals();
            if est.converged || splits >= self.opts.max_subdivisions || self.pieces.is_empty() {
                return Ok(est);
            }
            let tol: Vec<f64> = (0..M)
                .map(|k| self.tolerance(est.magnitude[k]).max(f64::MIN_POSITIVE))
                .collect();
            let worst = (0..self.pieces.len())
                .max_by(|&i, &j| {
                    let si = (0..M).map(|k| self.pieces[i].error[k] / tol[k]).fold(0.0, f64::max);
                    let sj = (0..M).map(|k| self.pieces[j].error[k] / tol[k]).fold(0.0, f64::max);
                    si.partial_cmp(&sj).unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty");
            let p = self.pieces.swap_remove(worst);
            let mid = 0.5 * (p.a + p.b);
            if !(mid > p.a && mid < p.b) {
                // Interval at floating-point resolution; keep it as is.
                self.pieces.push(p);
                return Ok(self.totals());
            }
            self.pieces.push(qk15(f, p.a, mid)?);
            self.pieces.push(qk15(f, mid, p.b)?);
            self.evaluations += 30;
            splits += 1;
        }
    }
}

/// Integrates `f` over `[a, b]`, with the given interior breakpoints as
/// initial subdivision points.
pub fn integrate<const M: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: AdaptiveOptions,
) -> Result<Estimate<M>>
where
    F: FnMut(f64) -> Result<[f64; M]>,
{
    let mut pts: Vec<f64> = breakpoints.iter().cloned().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let mut ad = Adaptive::new(opts);
    for w in pts.windows(2) {
        ad.add_interval(&mut f, w[0], w[1])?;
    }
    ad.refine(&mut f)
}

/// Scalar convenience wrapper.
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, opts: AdaptiveOptions) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let est = integrate(|x| Ok([f(x)]), a, b, &[], opts)?;
    Ok((est.value[0], est.error[0]))
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton iteration on `P_m`).
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); m];
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 0 { 1.0 } else if m == 1 { x } else { p1 };
            let pm1 = if m <= 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[m - 1 - i] = (x, w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_degree_22_polynomials() {
        // K15 integrates polynomials of degree 22 exactly.
        let (v, _) = integrate_scalar(|x| x.powi(22), -1.0, 1.0, AdaptiveOptions::default()).unwrap();
        assert!((v - 2.0 / 23.0).abs() < 1e-15);
        let sum: f64 = WGK.iter().take(7).map(|w| 2.0 * w).sum::<f64>() + WGK[7];
        assert!((sum - 2.0).abs() < 1e-15);
        let gsum: f64 = WG.iter().take(3).map(|w| 2.0 * w).sum::<f64>() + WG[3];
        assert!((gsum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kink_and_endpoint_singularity() {
        let opts = AdaptiveOptions { rel_tol: 1e-12, ..Default::default() };
        let (v, _) = integrate_scalar(|x| (x - 0.3).abs(), 0.0, 1.0, opts).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-12);
        let (v, _) = integrate_scalar(|x| x.sqrt(), 0.0, 1.0, opts).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn vector_components_with_cancellation() {
        // ∫_0^{2π} (1, cos t, sin t) dt = (2π, 0, 0)
        let est = integrate(
            |t: f64| Ok([1.0, t.cos(), t.sin()]),
            0.0,
            2.0 * std::f64::consts::PI,
            &[],
            AdaptiveOptions::default(),
        )
        .unwrap();
        assert!(est.converged);
        assert!((est.value[0] - 2.0 * std::f64::consts::PI).abs() < 1e-13);
        assert!(est.value[1].abs() < 1e-13 && est.value[2].abs() < 1e-13);
    }

    #[test]
    fn legendre_rules() {
        for m in 1..40 {
            let r = gauss_legendre(m);
            let s: f64 = r.iter().map(|p| p.1).sum();
            assert!((s - 2.0).abs() < 1e-13, "m = {m}");
            // exact for x^(2m-2)
            let deg = 2 * m - 2;
            let q: f64 = r.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
            assert!((q - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "m = {m}");
        }
    }
}
