use std::time::Instant;

use super::sampling::{Sampler, Yrand};
use super::{McFlag, McParams, McTrace};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::Result;
use crate::normal::norm_cdf;
use crate::rng::RngStream;

const BE_CONSTANT: f64 = 0.56;
const MIN_N: u64 = 30;
const MAX_ITER: u64 = 1000;

/// Upper bound on the modified kurtosis that holds with probability
/// `1 - alpha_sigma` given the variance stage size and inflation factor.
pub fn kurtmax(n_sig: u64, alpha_sigma: f64, fudge: f64) -> f64 {
    let n = n_sig as f64;
    let g = 1.0 - 1.0 / (fudge * fudge);
    (n - 3.0) / (n - 1.0) + alpha_sigma * n / (1.0 - alpha_sigma) * g * g
}

/// Two-sided non-coverage bound from the Berry-Esseen inequality.
fn be_tail(n: f64, eps: f64, sigma: f64, kurt: f64) -> f64 {
    let t = n.sqrt() * eps / sigma;
    norm_cdf(-t) + BE_CONSTANT * kurt.powf(0.75) / (n.sqrt() * (1.0 + t).powi(3))
}

/// Smallest `n` whose Berry-Esseen bound at half-width `eps` is at most
/// `alpha/2`, or `None` if no `n` up to `limit` works.
pub fn n_berry_esseen(sigma: f64, eps: f64, alpha: f64, kurt: f64, limit: u64) -> Option<u64> {
    let ok = |n: u64| be_tail(n as f64, eps, sigma, kurt) <= alpha / 2.0;
    if !ok(limit) {
        return None;
    }
    let (mut lo, mut hi) = (0u64, 1u64);
    while hi < limit && !ok(hi) {
        lo = hi;
        hi = (hi * 2).min(limit);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Mean-stage sample size for half-width `tolfun_val` at uncertainty
/// `alpha_mu`: the smaller of the Chebyshev and Berry-Esseen sizes, at
/// least 30.
pub fn two_stage_n(var_hat: f64, fudge: f64, tolfun_val: f64, alpha_mu: f64, kurtmax: f64) -> u64 {
    let sig2 = fudge * fudge * var_hat;
    if sig2 <= 0.0 {
        return MIN_N;
    }
    let cheb = (sig2 / (alpha_mu * tolfun_val * tolfun_val)).ceil();
    let cheb = if cheb >= 1e18 { u64::MAX / 4 } else { cheb as u64 };
    let be = n_berry_esseen(sig2.sqrt(), tolfun_val, alpha_mu, kurtmax, cheb).unwrap_or(cheb);
    cheb.min(be).max(MIN_N)
}

/// Half-width certified by `n` samples: the smaller of the Chebyshev and
/// Berry-Esseen half-widths for standard deviation bound `sigma`.
pub fn certified_halfwidth(n: u64, sigma: f64, alpha: f64, kurt: f64) -> f64 {
    if sigma <= 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    let cheb = sigma / (nf * alpha).sqrt();
    if be_tail(nf, cheb, sigma, kurt) > alpha / 2.0 {
        return cheb;
    }
    let (mut lo, mut hi) = (0.0, cheb);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if be_tail(nf, mid, sigma, kurt) <= alpha / 2.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    hi
}

/// Mean of a random variable to within `tolfun` with probability at least
/// `1 - alpha`.
///
/// A first stage of `nSig` samples bounds the variance (inflated by
/// `fudge^2`). The mean is then estimated from fresh samples in a sequence
/// of iterations with uncertainties `alpha_mu / 2^i`, each shrinking the
/// certified half-width, until the half-width meets the tolerance at every
/// value compatible with the estimate.
///
/// ```
/// use gailrs::montecarlo::{mean_mc, McParams};
/// use gailrs::RngStream;
///
/// let y = |r: &mut RngStream, n: usize| r.uniforms(n).iter().map(|u| u * u).collect();
/// let p = McParams::default().with_tol(1e-3, 0.0).with_alpha(0.05);
/// let (tmu, diag) = mean_mc(&y, &p, &mut RngStream::new(1, 0)).unwrap();
/// assert!(diag.exit_flags.is_clean());
/// assert!((tmu - 1.0 / 3.0).abs() < 1e-2);
/// ```
pub fn mean_mc(yrand: &Yrand<'_>, p: &McParams, rng: &mut RngStream) -> Result<(f64, SolverDiagnostics)> {
    let flag = match p.flag {
        McFlag::CheckedByCubMC => McFlag::CheckedByCubMC,
        _ => McFlag::CheckedByMeanMC,
    };
    run(yrand, p, rng, flag, Algorithm::MeanMc)
}

pub(super) fn run(
    yrand: &Yrand<'_>,
    p: &McParams,
    rng: &mut RngStream,
    flag: McFlag,
    algorithm: Algorithm,
) -> Result<(f64, SolverDiagnostics)> {
    let start = Instant::now();
    p.validate()?;
    let alpha_sigma = 1.0 - (1.0 - p.alpha).sqrt();
    let alpha_mu = 1.0 - (1.0 - p.alpha) / (1.0 - alpha_sigma);
    let kmax = kurtmax(p.n_sig, alpha_sigma, p.fudge);
    let mut sampler = Sampler::new(yrand, rng, p.threads);

    let stage1 = sampler.draw(p.n_sig)?;
    let var = stage1.variance();
    let sigma = p.fudge * var.sqrt();
    let mut trace = McTrace {
        var,
        kurtmax: kmax,
        ntot: p.n_sig,
        ..McTrace::default()
    };
    let mut flags = ExitFlags::default();
    let mut n = p.n1;
    let mut i = 1u64;
    let tmu = loop {
        let alpha_i = alpha_mu * 0.5f64.powi(i as i32);
        let elapsed = start.elapsed().as_secs_f64();
        let rate = trace.ntot as f64 / elapsed.max(1e-9);
        let over_n = trace.ntot.saturating_add(n) > p.budget.nbudget;
        let over_t = elapsed + n as f64 / rate > p.budget.tbudget_seconds;
        if over_n || over_t {
            let by_n = p.budget.nbudget.saturating_sub(trace.ntot);
            let by_t = ((p.budget.tbudget_seconds - elapsed).max(0.0) * rate) as u64;
            let nremain = by_n.min(by_t);
            flags.set(ExitFlags::BUDGET);
            trace.nremain = nremain;
            if nremain == 0 {
                break trace.hmu.last().copied().unwrap_or(stage1.mean);
            }
            let m = sampler.draw(nremain)?;
            trace.n.push(nremain);
            trace.hmu.push(m.mean);
            trace.tol.push(certified_halfwidth(nremain, sigma, alpha_i, kmax));
            trace.ntot += nremain;
            break m.mean;
        }
        let m = sampler.draw(n)?;
        let eps = certified_halfwidth(n, sigma, alpha_i, kmax);
        trace.n.push(n);
        trace.hmu.push(m.mean);
        trace.tol.push(eps);
        trace.ntot += n;
        let target = p.tol.certified_target(m.mean.abs());
        if eps <= target {
            break m.mean;
        }
        if i >= MAX_ITER {
            flags.set(ExitFlags::BUDGET);
            break m.mean;
        }
        let next = (0.9 * target).min(eps / 2.0).max(eps / 100.0);
        i += 1;
        n = two_stage_n(var, p.fudge, next, alpha_mu * 0.5f64.powi(i as i32), kmax);
    };
    trace.tau = trace.n.len() as u64;
    let mut diag = SolverDiagnostics::new(algorithm);
    diag.n_evals = trace.ntot;
    diag.n_points = trace.ntot;
    diag.iterations = trace.tau;
    diag.errest = trace.tol.last().copied().unwrap_or(f64::INFINITY);
    diag.exit_flags = flags;
    diag.put("flag", serde_json::to_value(flag).unwrap_or_default());
    diag.put("alpha_sigma", alpha_sigma);
    diag.put("n_up", p.n_sig + two_stage_n(var, p.fudge, p.tol.certified_target(tmu.abs()), alpha_mu / 2.0, kmax));
    diag.put("trace", serde_json::to_value(&trace).unwrap_or_default());
    diag.stop_clock(start);
    Ok((tmu, diag))
}
