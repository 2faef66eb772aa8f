use super::mean::run;
use super::{McFlag, McParams};
use crate::diagnostics::{Algorithm, SolverDiagnostics};
use crate::error::Result;
use crate::hyperbox::{Hyperbox, Measure};
use crate::rng::RngStream;

/// Integral of `f` over `hyperbox` by guaranteed Monte Carlo.
///
/// `f` receives `n` points as a row-major `n x d` slice and returns `n`
/// values. Under the uniform measure the integral is the box volume times
/// the mean of `f` at uniform points; under the normal measure it is the
/// expectation of `f` at standard normal points.
///
/// ```
/// use gailrs::montecarlo::{cub_mc, McParams};
/// use gailrs::{Hyperbox, RngStream};
///
/// let f = |x: &[f64]| x.iter().map(|t| t.sin()).collect::<Vec<_>>();
/// let p = McParams::default().with_tol(1e-3, 1e-2);
/// let (q, _) = cub_mc(&f, &Hyperbox::uniform(vec![1.0], vec![2.0]), &p, &RngStream::new(1, 0)).unwrap();
/// assert!((q - 0.9564491424152821).abs() < 1e-2);
/// ```
pub fn cub_mc(
    f: &(dyn Fn(&[f64]) -> Vec<f64> + Sync),
    hyperbox: &Hyperbox,
    params: &McParams,
    rng: &RngStream,
) -> Result<(f64, SolverDiagnostics)> {
    hyperbox.validate()?;
    let d = hyperbox.dim();
    let vol = hyperbox.volume();
    let yrand = |r: &mut RngStream, n: usize| -> Vec<f64> {
        let x = match hyperbox.measure {
            Measure::Uniform => {
                let mut u = r.uniforms(n * d);
                for row in u.chunks_mut(d) {
                    for (j, t) in row.iter_mut().enumerate() {
                        let (l, h) = (hyperbox.lower[j], hyperbox.upper[j]);
                        *t = l + (h - l) * *t;
                    }
                }
                u
            }
            Measure::Normal => r.normals(n * d),
        };
        let mut y = f(&x);
        for v in &mut y {
            *v *= vol;
        }
        y
    };
    let mut r = rng.clone();
    let (q, mut diag) = run(&yrand, params, &mut r, McFlag::CheckedByCubMC, Algorithm::CubMc)?;
    diag.put("d", d as u64);
    Ok((q, diag))
}
