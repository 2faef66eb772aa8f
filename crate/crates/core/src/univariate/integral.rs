use std::time::Instant;

use super::{ninit_rule, IntervalProblem};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::Result;

struct Trapezoid {
    q: f64,
    /// Sampled `||f' - secant||_1`.
    slope_l1: f64,
    /// Sampled total variation of `f'`.
    slope_var: f64,
}

fn trapezoid(y: &[f64], a: f64, b: f64) -> Trapezoid {
    let g = y.len() - 1;
    let h = (b - a) / g as f64;
    let secant = (y[g] - y[0]) / (b - a);
    let inner: f64 = y[1..g].iter().sum();
    let q = h * (inner + 0.5 * (y[0] + y[g]));
    let mut slope_l1 = 0.0;
    let mut slope_var = 0.0;
    let mut prev = f64::NAN;
    for w in y.windows(2) {
        let s = (w[1] - w[0]) / h;
        slope_l1 += h * (s - secant).abs();
        if !prev.is_nan() {
            slope_var += (s - prev).abs();
        }
        prev = s;
    }
    let ymax = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if slope_var <= 4.0 * f64::EPSILON * ymax * g as f64 / h {
        // slopes agree to rounding, so does their spread about the secant
        slope_var = 0.0;
        slope_l1 = 0.0;
    }
    Trapezoid {
        q,
        slope_l1,
        slope_var,
    }
}

/// Upper bound on `||f''||_1` implied by the cone with constant `nstar`.
fn variation_bound(nstar: usize, t: &Trapezoid, len: f64, gaps: usize) -> f64 {
    let shrink = 1.0 - nstar as f64 / (4.0 * gaps as f64);
    if shrink <= 0.0 {
        return f64::INFINITY;
    }
    nstar as f64 * t.slope_l1 / (2.0 * len * shrink)
}

/// Adaptive trapezoidal rule with absolute error at most `abstol` for
/// integrands in the cone.
///
/// ```
/// use gailrs::univariate::{integral, IntervalProblem};
///
/// let p = IntervalProblem::from_scalar(|x| x * x, 0.0, 1.0);
/// let (q, diag) = integral(&p).unwrap();
/// assert!(diag.exit_flags.is_clean());
/// assert!((q - 1.0 / 3.0).abs() <= 1e-6);
/// ```
pub fn integral(p: &IntervalProblem<'_>) -> Result<(f64, SolverDiagnostics)> {
    let start = Instant::now();
    p.validate()?;
    let ninit = ninit_rule(p.nlo, p.nhi, p.a, p.b)?;
    let len = p.b - p.a;
    let mut diag = SolverDiagnostics::new(Algorithm::Integral);
    let mut nstar = ninit - 2;
    let mut tauchange = false;
    let grid = |g: usize| -> Vec<f64> {
        let mut x: Vec<f64> = (0..=g).map(|i| p.a + len * i as f64 / g as f64).collect();
        x[g] = p.b;
        x
    };
    let mut gaps = ninit - 1;
    let mut y = p.eval(&grid(gaps))?;
    let mut iter = 0u64;
    let (q, errest) = loop {
        iter += 1;
        let t = trapezoid(&y, p.a, p.b);
        let mut var_up = variation_bound(nstar, &t, len, gaps);
        while t.slope_var > var_up {
            nstar *= 2;
            tauchange = true;
            var_up = variation_bound(nstar, &t, len, gaps);
        }
        let h = len / gaps as f64;
        let errest = h * h * var_up / 8.0;
        if errest <= p.abstol {
            break (t.q, errest);
        }
        let factor = if var_up.is_finite() {
            let h_needed = (8.0 * p.abstol / var_up).sqrt();
            ((h / h_needed).ceil() as usize).max(2)
        } else {
            2
        };
        let new_gaps = gaps * factor;
        if (new_gaps + 1) as u64 > p.budget.nmax {
            diag.exit_flags.set(ExitFlags::BUDGET);
            break (t.q, errest);
        }
        if iter >= p.budget.maxiter {
            diag.exit_flags.set(ExitFlags::MAXITER);
            break (t.q, errest);
        }
        // old samples sit at every `factor`-th new grid point
        let x = grid(new_gaps);
        let fresh: Vec<f64> = x
            .iter()
            .enumerate()
            .filter(|(i, _)| i % factor != 0)
            .map(|(_, &v)| v)
            .collect();
        let fy = p.eval(&fresh)?;
        let mut merged = Vec::with_capacity(new_gaps + 1);
        let mut it = fy.into_iter();
        for i in 0..=new_gaps {
            if i % factor == 0 {
                merged.push(y[i / factor]);
            } else {
                merged.push(it.next().unwrap_or(f64::NAN));
            }
        }
        y = merged;
        gaps = new_gaps;
    };
    diag.n_evals = (gaps + 1) as u64;
    diag.n_points = (gaps + 1) as u64;
    diag.iterations = iter;
    diag.errest = errest;
    diag.put("ninit", ninit);
    diag.put("nstar", nstar);
    diag.put("tau", 2 * nstar + 1);
    diag.put("tauchange", tauchange);
    diag.put("exceedbudget", diag.exit_flags.has(ExitFlags::BUDGET));
    diag.stop_clock(start);
    Ok((q, diag))
}
