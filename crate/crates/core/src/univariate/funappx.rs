use std::time::Instant;

use super::approx::PiecewiseLinearApprox;
use super::subinterval::{initial, join, split, split_cost, stats};
use super::{ninit_rule, IntervalProblem};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::Result;

/// Locally adaptive piecewise linear approximation with sup-norm error at
/// most `abstol` for functions in the cone.
///
/// Every subinterval carries `ninit` uniformly spaced points. A subinterval
/// whose error estimate exceeds `abstol`, or whose data contradict the cone
/// condition, is halved; each half again gets `ninit` points, half of them
/// inherited.
///
/// ```
/// use gailrs::univariate::{funappx, IntervalProblem};
///
/// let p = IntervalProblem::from_scalar(|x| x * x, 0.0, 1.0);
/// let (fappx, diag) = funappx(&p).unwrap();
/// assert!(diag.exit_flags.is_clean());
/// assert!((fappx.eval(0.3) - 0.09).abs() <= 1e-6);
/// ```
pub fn funappx(p: &IntervalProblem<'_>) -> Result<(PiecewiseLinearApprox, SolverDiagnostics)> {
    let start = Instant::now();
    p.validate()?;
    let ninit = ninit_rule(p.nlo, p.nhi, p.a, p.b)?;
    let mut diag = SolverDiagnostics::new(Algorithm::Funappx);
    let mut subs = vec![initial(p, ninit, ninit - 2)?];
    let mut npoints = ninit;
    let mut iter = 0u64;
    let errest = loop {
        iter += 1;
        let st = stats(&subs);
        let mut marked = vec![false; subs.len()];
        let mut errest: f64 = 0.0;
        for (i, s) in subs.iter_mut().enumerate() {
            if s.violates_cone(&st[i]) {
                s.nstar *= 2;
                marked[i] = true;
            }
            let e = st[i].h * st[i].h / 8.0 * s.curvature_bound(&st[i]);
            if e > p.abstol {
                marked[i] = true;
            }
            errest = errest.max(e);
        }
        if !marked.contains(&true) {
            break errest;
        }
        let cost: usize = subs
            .iter()
            .zip(&marked)
            .filter(|(_, &m)| m)
            .map(|(s, _)| split_cost(s))
            .sum();
        if (npoints + cost) as u64 > p.budget.nmax {
            diag.exit_flags.set(ExitFlags::BUDGET);
            break errest;
        }
        if iter >= p.budget.maxiter {
            diag.exit_flags.set(ExitFlags::MAXITER);
            break errest;
        }
        let (next, added) = split(p, subs, &marked)?;
        subs = next;
        npoints += added;
    };
    let (x, y) = join(&subs);
    debug_assert_eq!(x.len(), npoints);
    diag.n_evals = npoints as u64;
    diag.n_points = x.len() as u64;
    diag.iterations = iter;
    diag.errest = errest;
    diag.put("ninit", ninit);
    diag.put("nstar", subs.iter().map(|s| s.nstar).collect::<Vec<_>>());
    diag.put("intervals", subs.len());
    diag.stop_clock(start);
    Ok((PiecewiseLinearApprox::new(x, y)?, diag))
}
