use std::time::Instant;

use super::sampling::{Sampler, Yrand};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::{config, Result};
use crate::rng::RngStream;

/// Hoeffding sample size `ceil(ln(2/alpha) / (2 abstol^2))` for a
/// Bernoulli mean to within `abstol` with probability `1 - alpha`.
///
/// Values within a relative `1e-9` of an integer are taken to be that
/// integer, so that exact cases are not pushed up by rounding noise.
///
/// ```
/// assert_eq!(gailrs::montecarlo::hoeffding_n(1e-2, 0.01).unwrap(), 26492);
/// ```
pub fn hoeffding_n(abstol: f64, alpha: f64) -> Result<u64> {
    if !(abstol > 0.0 && abstol.is_finite()) {
        return config(format!("abstol must be positive, got {abstol}"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return config(format!("alpha must lie in (0,1), got {alpha}"));
    }
    let v = (2.0 / alpha).ln() / (2.0 * abstol * abstol);
    if !(v < 1.8e19) {
        return config("Hoeffding sample size does not fit in 64 bits");
    }
    let r = v.round();
    let n = if (v - r).abs() <= 1e-9 * v { r } else { v.ceil() };
    Ok((n as u64).max(1))
}

/// Probability of success of a 0/1 random variable to within `abstol` with
/// probability at least `1 - alpha`. Draws the Hoeffding sample size, or
/// `nmax` samples with exit bit 1 when that is smaller.
///
/// ```
/// use gailrs::montecarlo::mean_mc_ber;
/// use gailrs::RngStream;
///
/// let y = |r: &mut RngStream, n: usize| {
///     r.uniforms(n).iter().map(|&u| if u < 0.25 { 1.0 } else { 0.0 }).collect()
/// };
/// let (p, diag) = mean_mc_ber(&y, 1e-2, 0.05, 1_000_000_000, &RngStream::new(3, 0)).unwrap();
/// assert!((p - 0.25).abs() < 1e-2);
/// assert_eq!(diag.n_evals, 18445);
/// ```
pub fn mean_mc_ber(
    yrand: &Yrand<'_>,
    abstol: f64,
    alpha: f64,
    nmax: u64,
    rng: &RngStream,
) -> Result<(f64, SolverDiagnostics)> {
    let start = Instant::now();
    if nmax == 0 {
        return config("nmax must be positive");
    }
    let n = hoeffding_n(abstol, alpha)?;
    let mut diag = SolverDiagnostics::new(Algorithm::MeanMcBer);
    let used = n.min(nmax);
    if n > nmax {
        diag.exit_flags.set(ExitFlags::BUDGET);
    }
    let m = Sampler::new(yrand, rng, 1).bernoulli().draw(used)?;
    diag.n_evals = used;
    diag.n_points = used;
    diag.iterations = 1;
    // guaranteed half-width at the size actually drawn
    diag.errest = ((2.0 / alpha).ln() / (2.0 * used as f64)).sqrt();
    diag.put("n_hoeffding", n);
    diag.stop_clock(start);
    Ok((m.mean, diag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_values() {
        assert_eq!(hoeffding_n(1e-2, 0.01).unwrap(), 26492);
        assert_eq!(hoeffding_n(1e-3, 0.01).unwrap(), 2649159);
        assert_eq!(hoeffding_n(1e-4, 0.01).unwrap(), 264915869);
        let a = (2.0f64 / 0.05).ln();
        // abstol chosen so the exact value is 100
        let tol = (a / 200.0).sqrt();
        assert_eq!(hoeffding_n(tol, 0.05).unwrap(), 100);
        assert!(hoeffding_n(0.0, 0.05).is_err());
        assert!(hoeffding_n(0.1, 1.0).is_err());
    }

    fn ber(p: f64) -> impl Fn(&mut RngStream, usize) -> Vec<f64> + Sync {
        move |r: &mut RngStream, n: usize| {
            r.uniforms(n)
                .into_iter()
                .map(|u| if u < p { 1.0 } else { 0.0 })
                .collect()
        }
    }

    #[test]
    fn ninth() {
        let y = ber(1.0 / 9.0);
        let (p, d) = mean_mc_ber(&y, 1e-3, 0.01, 1_000_000_000, &RngStream::new(7, 0)).unwrap();
        assert!(d.exit_flags.is_clean());
        assert_eq!(d.n_evals, 2649159);
        assert!((p - 1.0 / 9.0).abs() <= 1e-3);
    }

    #[test]
    fn nmax_cap() {
        let y = ber(0.5);
        let (_, d) = mean_mc_ber(&y, 1e-3, 0.01, 1000, &RngStream::new(7, 0)).unwrap();
        assert!(d.exit_flags.has(ExitFlags::BUDGET));
        assert_eq!(d.n_evals, 1000);
    }

    #[test]
    fn non_binary_is_an_error() {
        let y = |r: &mut RngStream, n: usize| r.uniforms(n);
        assert!(mean_mc_ber(&y, 1e-2, 0.05, 1_000_000, &RngStream::new(1, 0)).is_err());
    }
}
