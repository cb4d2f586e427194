//! `log` of the average of `e^{a x_1}` over the unit ball of `R^n`.
//!
//! The average equals `Γ(ν+1) (2/a)^ν I_ν(a)` with `ν = n/2`, i.e. the
//! hypergeometric series `Σ_k (a²/4)^k / (k! (ν+1)_k)`. Small and moderate
//! `a` use that series (all terms positive); large `a` uses the Hankel
//! asymptotic expansion of `I_ν`.

use std::f64::consts::PI;

fn ln_gamma_half_integer_plus_one(n: usize) -> f64 {
    // Γ(n/2 + 1)
    if n % 2 == 0 {
        (1..=n / 2).map(|k| (k as f64).ln()).sum()
    } else {
        0.5 * PI.ln() + (0..=(n - 1) / 2).map(|j| (j as f64 + 0.5).ln()).sum::<f64>()
    }
}

pub fn log_ball_average(n: usize, a: f64) -> f64 {
    let a = a.abs();
    if a == 0.0 {
        return 0.0;
    }
    let nu = n as f64 / 2.0;
    if a <= 40.0 + nu * nu {
        let q = a * a / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (nu + k));
            sum += term;
            if term <= 1e-17 * sum && k > a / 2.0 {
                break;
            }
        }
        sum.ln()
    } else {
        let mu = 4.0 * nu * nu;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            let odd = (2 * k - 1) as f64;
            let next = -term * (mu - odd * odd) / (8.0 * k as f64 * a);
            if next.abs() >= term.abs() {
                break;
            }
            if next.abs() < 1e-17 {
                sum += next;
                break;
            }
            term = next;
            sum += term;
        }
        ln_gamma_half_integer_plus_one(n) + nu * (2.0 / a).ln() + a - 0.5 * (2.0 * PI * a).ln() + sum.ln()
    }
}
