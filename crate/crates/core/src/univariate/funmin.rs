use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::subinterval::{initial, split, split_cost, stats, Sub};
use super::{ninit_rule, IntervalProblem};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::{config, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizerResult {
    pub fmin: f64,
    pub volume_x: f64,
    /// Disjoint `[left, right]` pairs that together contain every global
    /// minimizer.
    pub intervals: Vec<[f64; 2]>,
    pub errest: f64,
}

/// Lower bound of `y0 + (y1-y0) t - c t (1-t)` over `t` in `[0,1]`.
fn cell_lower_bound(y0: f64, y1: f64, c: f64) -> f64 {
    let d = y1 - y0;
    if c > 0.0 {
        let t = (c - d) / (2.0 * c);
        if (0.0..=1.0).contains(&t) {
            return y0 - (c - d) * (c - d) / (4.0 * c);
        }
    }
    y0.min(y1)
}

struct Bounds {
    lower: f64,
    upper: f64,
    cells: Vec<(usize, usize)>,
    intervals: Vec<[f64; 2]>,
    volume: f64,
}

fn bounds(subs: &[Sub], curvature: &[f64]) -> Bounds {
    let upper = subs
        .iter()
        .flat_map(|s| s.y.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let mut lower = f64::INFINITY;
    let mut cells = Vec::new();
    let mut intervals: Vec<[f64; 2]> = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        for j in 0..s.gaps() {
            let h = s.x[j + 1] - s.x[j];
            let lb = cell_lower_bound(s.y[j], s.y[j + 1], curvature[i] * h * h / 2.0);
            lower = lower.min(lb);
            if lb <= upper {
                cells.push((i, j));
                match intervals.last_mut() {
                    Some(last) if last[1] == s.x[j] => last[1] = s.x[j + 1],
                    _ => intervals.push([s.x[j], s.x[j + 1]]),
                }
            }
        }
    }
    let volume = intervals.iter().map(|iv| iv[1] - iv[0]).sum();
    Bounds {
        lower,
        upper,
        cells,
        intervals,
        volume,
    }
}

/// Guaranteed global minimum of `f` on `[a, b]`: stops once the gap between
/// the smallest sample and a certified lower bound is at most `abstol`, or
/// once the possible locations of the minimizers have total length at most
/// `tolx`.
///
/// ```
/// use gailrs::univariate::{funmin, IntervalProblem};
///
/// let p = IntervalProblem::from_scalar(|x| (x - 0.3).powi(2) + 1.0, 0.0, 1.0);
/// let (res, _) = funmin(&p, 1e-3).unwrap();
/// assert!((res.fmin - 1.0).abs() <= 1e-6);
/// assert!(res.intervals.iter().any(|iv| iv[0] <= 0.3 && 0.3 <= iv[1]));
/// ```
pub fn funmin(p: &IntervalProblem<'_>, tolx: f64) -> Result<(MinimizerResult, SolverDiagnostics)> {
    let start = Instant::now();
    p.validate()?;
    if !(tolx > 0.0) {
        return config(format!("TolX must be positive, got {tolx}"));
    }
    let ninit = ninit_rule(p.nlo, p.nhi, p.a, p.b)?;
    let mut diag = SolverDiagnostics::new(Algorithm::Funmin);
    let mut subs = vec![initial(p, ninit, ninit - 2)?];
    let mut npoints = ninit;
    let mut iter = 0u64;
    let mut tauchange = false;
    let b = loop {
        iter += 1;
        let st = stats(&subs);
        let mut marked = vec![false; subs.len()];
        for (i, s) in subs.iter_mut().enumerate() {
            if s.violates_cone(&st[i]) {
                s.nstar *= 2;
                tauchange = true;
                marked[i] = true;
            }
        }
        let curvature: Vec<f64> = subs
            .iter()
            .zip(&st)
            .map(|(s, t)| s.curvature_bound(t))
            .collect();
        let b = bounds(&subs, &curvature);
        let errest = (b.upper - b.lower).max(0.0);
        let trusted = !marked.contains(&true);
        if trusted && (errest <= p.abstol || b.volume <= tolx) {
            break b;
        }
        for &(i, _) in &b.cells {
            marked[i] = true;
        }
        let cost: usize = subs
            .iter()
            .zip(&marked)
            .filter(|(_, &m)| m)
            .map(|(s, _)| split_cost(s))
            .sum();
        if (npoints + cost) as u64 > p.budget.nmax {
            diag.exit_flags.set(ExitFlags::BUDGET);
            break b;
        }
        let (next, added) = split(p, subs, &marked)?;
        subs = next;
        npoints += added;
    };
    let nstar = subs.iter().map(|s| s.nstar).max().unwrap_or(ninit - 2);
    let errest = (b.upper - b.lower).max(0.0);
    diag.n_evals = npoints as u64;
    diag.n_points = npoints as u64;
    diag.iterations = iter;
    diag.errest = errest;
    diag.put("ninit", ninit);
    diag.put("tau", 2 * nstar + 1);
    diag.put("tauchange", tauchange);
    diag.put("volumeX", b.volume);
    diag.put("intervals", serde_json::to_value(&b.intervals).unwrap_or_default());
    diag.stop_clock(start);
    let res = MinimizerResult {
        fmin: b.upper,
        volume_x: b.volume,
        intervals: b.intervals,
        errest,
    };
    Ok((res, diag))
}
