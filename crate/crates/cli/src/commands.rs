use crate::config::{CliError, CliResult, NamedBody, RunConfig};
use crate::output::{spec_hash, Field, Row};
use crate::pool::run_ordered;
use lp_santalo::lp_polar::h_p;
use lp_santalo::santalo::{
    check_sinh_log_convexity, santalo_point, verification_suite, SantaloSolveOptions, SuiteOptions, Verdict,
    VerificationReport,
};
use lp_santalo::geometry::transform;
use lp_santalo::{mahler_volume, ConvexBody, LpSupportEvaluator, MahlerVolume, Matrix, PExponent, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance on `‖s_p‖` for centrally symmetric bodies.
pub const SYMMETRIC_CENTER_TOLERANCE: f64 = 1e-7;

fn numeric(what: &str, body: &NamedBody, p: PExponent, e: impl std::fmt::Display) -> CliError {
    CliError::Numeric(format!("{what} of {} at p = {p}: {e}", body.name))
}

fn head(command: &str, cfg: &RunConfig, body: &str, p: Option<PExponent>) -> Row {
    Row::new()
        .with("command", command)
        .with("body", body)
        .with("p", p.map(|p| p.to_string()))
        .with("seed", cfg.seed)
        .with("quadrature_hash", spec_hash(&cfg.spec))
}

fn jobs(cfg: &RunConfig) -> Vec<(usize, PExponent)> {
    (0..cfg.bodies.len())
        .flat_map(|i| cfg.p.iter().map(move |&p| (i, p)))
        .collect()
}

fn solve_options(cfg: &RunConfig) -> SantaloSolveOptions {
    SantaloSolveOptions {
        quadrature: cfg.spec,
        ..SantaloSolveOptions::default()
    }
}

fn finite_or_inf(m: &MahlerVolume) -> f64 {
    if m.is_finite() {
        m.value()
    } else {
        f64::INFINITY
    }
}

/// `|K|`, `b(K)`, `s_p(K)`, `M_p(K − s_p(K))`, `|(K − s_p(K))°ᵖ|` and
/// `M_p(K)` at the body's own origin, one row per body and exponent.
pub fn compute(cfg: &RunConfig, threads: usize) -> CliResult<Vec<Row>> {
    let opts = solve_options(cfg);
    let results = run_ordered(&jobs(cfg), threads, |&(i, p)| -> CliResult<Row> {
        let nb = &cfg.bodies[i];
        let k = &nb.body;
        let n = k.dim();
        let volume = k.volume().map_err(|e| numeric("|K|", nb, p, e))?;
        let bary = k.barycenter().map_err(|e| numeric("b(K)", nb, p, e))?;
        let sol = santalo_point(k, p, &opts)
            .and_then(|s| s.require_converged())
            .map_err(|e| numeric("s_p(K)", nb, p, e))?;
        let m = mahler_volume(k, p, &sol.point, &cfg.spec).map_err(|e| numeric("M_p(K - s_p(K))", nb, p, e))?;
        if !m.is_finite() {
            return Err(numeric("M_p(K - s_p(K))", nb, p, "infinite at the Santaló point"));
        }
        let origin = mahler_volume(k, p, &Vector::zeros(n), &cfg.spec).map_err(|e| numeric("M_p(K)", nb, p, e))?;
        Ok(head("compute", cfg, &nb.name, Some(p))
            .with("dim", n)
            .with("volume", volume)
            .with("barycenter", bary.iter().cloned().collect::<Vec<_>>())
            .with("santalo_point", sol.point.iter().cloned().collect::<Vec<_>>())
            .with("gradient_norm", sol.gradient_norm)
            .with("iterations", sol.iterations)
            .with("mahler", m.value())
            .with("mahler_error", m.error())
            .with("polar_volume", m.value() / ((1..=n).product::<usize>() as f64 * volume))
            .with("mahler_origin", finite_or_inf(&origin))
            .with("origin_infinite", !origin.is_finite()))
    });
    results.into_iter().collect()
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub suite: SuiteOptions,
}

fn report_row(cfg: &RunConfig, body: &str, p: Option<PExponent>, job_seed: Option<u64>, r: &VerificationReport) -> Row {
    let check = serde_json::to_value(r.check)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    verdict_row(cfg, body, p, job_seed, &check, r.verdict)
        .with("lhs", r.lhs)
        .with("rhs", r.rhs)
        .with("slack", r.slack)
        .with("error_bound", r.error_bound)
        .with("tolerance", r.tolerance)
        .with("samples", r.samples)
        .with("lambda", r.inputs.lambda)
        .with("params", params_text(r))
        .with("note", r.note.clone())
}

/// `key=value` pairs of the report's scalar inputs, `;`-separated.
fn params_text(r: &VerificationReport) -> String {
    r.inputs
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v:?}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn verdict_row(cfg: &RunConfig, body: &str, p: Option<PExponent>, job_seed: Option<u64>, check: &str, v: Verdict) -> Row {
    let verdict = match v {
        Verdict::Pass => "pass",
        Verdict::Inconclusive => "inconclusive",
        Verdict::Fail => "fail",
    };
    head("verify", cfg, body, p)
        .with("job_seed", job_seed)
        .with("check", check)
        .with("verdict", verdict)
}

/// `K = −K` up to rounding.
fn is_centrally_symmetric(k: &ConvexBody) -> bool {
    let n = k.dim();
    let minus = -Matrix::identity(n, n);
    match transform(k, &minus, &Vector::zeros(n)) {
        Ok(reflected) => k.approx_eq(&reflected, 1e-12 * (1.0 + k.support(&Vector::from_element(n, 1.0)).abs())),
        Err(_) => false,
    }
}

/// The verification suite for every body and exponent, a centering row for
/// centrally symmetric bodies, and one sinh log-convexity row. The second
/// value is whether any verdict is `fail`.
pub fn verify(cfg: &RunConfig, threads: usize, vo: &VerifyOptions) -> CliResult<(Vec<Row>, bool)> {
    let opts = solve_options(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let work: Vec<(usize, PExponent, u64)> = jobs(cfg).into_iter().map(|(i, p)| (i, p, rng.random())).collect();
    let results = run_ordered(&work, threads, |&(i, p, job_seed)| -> CliResult<Vec<Row>> {
        let nb = &cfg.bodies[i];
        let reports = verification_suite(&nb.body, p, job_seed, &opts, &vo.suite)
            .map_err(|e| numeric("verification suite", nb, p, e))?;
        let mut rows: Vec<Row> = reports
            .iter()
            .map(|r| report_row(cfg, &nb.name, Some(p), Some(job_seed), r))
            .collect();
        if is_centrally_symmetric(&nb.body) {
            let s = santalo_point(&nb.body, p, &opts).map_err(|e| numeric("s_p(K)", nb, p, e))?;
            let norm = s.point.norm();
            let slack = -norm;
            let v = Verdict::classify(slack, SYMMETRIC_CENTER_TOLERANCE, 0.0);
            rows.push(
                verdict_row(cfg, &nb.name, Some(p), Some(job_seed), "symmetric_center", v)
                    .with("lhs", norm)
                    .with("rhs", 0.0)
                    .with("slack", slack)
                    .with("error_bound", 0.0)
                    .with("tolerance", SYMMETRIC_CENTER_TOLERANCE)
                    .with("samples", 1usize)
                    .with("lambda", None::<f64>)
                    .with("params", String::new())
                    .with("note", None::<String>),
            );
        }
        Ok(rows)
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let xs: Vec<f64> = (0..10).map(|i| 0.05 * 2f64.powf(i as f64 * 0.75)).collect();
    let ts: Vec<f64> = (1..=10).map(|i| 0.25 * i as f64).collect();
    let sinh = check_sinh_log_convexity(&xs, &ts, 0.01);
    rows.push(report_row(cfg, "-", None, None, &sinh));
    let failed = rows
        .iter()
        .any(|r| r.get("verdict") == Some(&Field::Str("fail".into())));
    Ok((rows, failed))
}

/// `(p, M_p(K − s_p(K)))` and `(p, h_{p,K}(y₀))` for every body and exponent.
pub fn sweep(cfg: &RunConfig, threads: usize, y0: Option<&[f64]>) -> CliResult<Vec<Row>> {
    for nb in &cfg.bodies {
        if let Some(y) = y0 {
            if y.len() != nb.body.dim() {
                return Err(CliError::Parse(format!(
                    "y0 has {} coordinates but {} has dimension {}",
                    y.len(),
                    nb.name,
                    nb.body.dim()
                )));
            }
        }
    }
    let opts = solve_options(cfg);
    let results = run_ordered(&jobs(cfg), threads, |&(i, p)| -> CliResult<Row> {
        let nb = &cfg.bodies[i];
        let n = nb.body.dim();
        let y = y0.map_or_else(|| Vector::from_fn(n, |j, _| if j == 0 { 1.0 } else { 0.0 }), Vector::from_row_slice);
        let sol = santalo_point(&nb.body, p, &opts)
            .and_then(|s| s.require_converged())
            .map_err(|e| numeric("s_p(K)", nb, p, e))?;
        let m = mahler_volume(&nb.body, p, &sol.point, &cfg.spec).map_err(|e| numeric("M_p(K - s_p(K))", nb, p, e))?;
        let ev = LpSupportEvaluator::new(&nb.body, p).map_err(|e| numeric("h_p(y0)", nb, p, e))?;
        Ok(head("sweep", cfg, &nb.name, Some(p))
            .with("p_value", p.as_f64())
            .with("mahler", finite_or_inf(&m))
            .with("mahler_error", m.error())
            .with("y0", y.iter().cloned().collect::<Vec<_>>())
            .with("h_y0", h_p(&ev, &y)))
    });
    results.into_iter().collect()
}
