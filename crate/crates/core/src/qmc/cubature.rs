use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use super::lattice::{LatticeGenerator, LATTICE_MAX_DIM, LATTICE_MAX_M};
use super::sobol::{SobolGenerator, SOBOL_MAX_DIM, SOBOL_MAX_M};
use super::transforms::{fft, fwht_inplace, Complex64};
use super::{bitrev, PointBlock, Periodizer};
use crate::diagnostics::{Algorithm, ExitFlags, SolverDiagnostics};
use crate::error::{check_finite, config, Error, Result};
use crate::hyperbox::{Hyperbox, Measure};
use crate::normal::norm_inv;
use crate::rng::RngStream;
use crate::tolerance::ToleranceSpec;

/// Inflation factor `m -> fudge(m)` applied to the coefficient sum.
#[derive(Clone)]
pub struct Fudge(Arc<dyn Fn(u32) -> f64 + Send + Sync>);

impl Fudge {
    pub fn new(f: impl Fn(u32) -> f64 + Send + Sync + 'static) -> Self {
        Fudge(Arc::new(f))
    }

    /// `m -> c * 2^-m`
    pub fn geometric(c: f64) -> Self {
        Fudge::new(move |m| c * 0.5f64.powi(m as i32))
    }

    pub fn eval(&self, m: u32) -> f64 {
        (self.0)(m)
    }
}

impl Default for Fudge {
    fn default() -> Self {
        Fudge::geometric(5.0)
    }
}

impl fmt::Debug for Fudge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fudge(fudge(10) = {:e})", self.eval(10))
    }
}

#[derive(Debug, Clone)]
pub struct QmcParams {
    pub tol: ToleranceSpec,
    pub mmin: u32,
    pub mmax: u32,
    pub fudge: Fudge,
    /// Lattice only.
    pub transform: Periodizer,
    /// The error bound sums the coefficients `lag` dyadic blocks below the
    /// top one.
    pub lag: u32,
    /// Sobol' only: apply a random linear matrix scramble on top of the
    /// digital shift.
    pub scramble: bool,
}

impl Default for QmcParams {
    fn default() -> Self {
        QmcParams {
            tol: ToleranceSpec::new(1e-4, 1e-2),
            mmin: 10,
            mmax: 24,
            fudge: Fudge::default(),
            transform: Periodizer::Baker,
            lag: 4,
            scramble: true,
        }
    }
}

impl QmcParams {
    pub fn with_tol(mut self, abstol: f64, reltol: f64) -> Self {
        self.tol = ToleranceSpec {
            abstol,
            reltol,
            ..self.tol
        };
        self
    }

    pub fn with_transform(mut self, t: Periodizer) -> Self {
        self.transform = t;
        self
    }

    fn validate(&self, max_m: u32) -> Result<()> {
        self.tol.validate()?;
        if self.mmin > self.mmax || self.mmax > max_m {
            return config(format!(
                "need mmin <= mmax <= {max_m}, got mmin = {}, mmax = {}",
                self.mmin, self.mmax
            ));
        }
        if self.mmin < self.lag + 1 {
            return config(format!("mmin must be at least lag + 1 = {}", self.lag + 1));
        }
        for m in self.mmin..=self.mmax {
            if !(self.fudge.eval(m) > 0.0) {
                return config(format!("fudge({m}) must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct QmcResult {
    pub q: f64,
    pub d: usize,
    pub n: u64,
    pub bound_err: f64,
    pub exit_flags: ExitFlags,
    pub elapsed_seconds: f64,
    pub diagnostics: SolverDiagnostics,
}

/// `fudge(m)` times the sum of `|coeffs|` over positions
/// `[2^(m-lag-1), 2^(m-lag))`. Pass magnitudes already ordered by the
/// wavenumber map; `lag = 0` sums the top block.
pub fn coeff_error_bound(coeffs: &[f64], m: u32, lag: u32, fudge: &Fudge) -> f64 {
    if m < lag + 1 || coeffs.len() < 1 << (m - lag) {
        return f64::INFINITY;
    }
    let lo = 1usize << (m - lag - 1);
    let hi = 1usize << (m - lag);
    fudge.eval(m) * coeffs[lo..hi].iter().map(|c| c.abs()).sum::<f64>()
}

/// Necessary conditions for the cone, accumulated over levels. Block sum
/// `S_l` at level `m` must lie within a fudge-dependent factor of every other
/// observation of the same block. The factor is floored at its value for
/// blocks `lag` levels below the top.
#[derive(Debug, Clone)]
pub struct ConeMonitor {
    lstar: u32,
    lag: u32,
    low: BTreeMap<u32, f64>,
    up: BTreeMap<u32, f64>,
}

impl ConeMonitor {
    pub fn new(mmin: u32, lag: u32) -> Self {
        ConeMonitor {
            lstar: mmin.saturating_sub(lag).max(1),
            lag,
            low: BTreeMap::new(),
            up: BTreeMap::new(),
        }
    }

    /// `sums[l]` is the block sum `S_l` at level `m`. Returns true once the
    /// history is inconsistent with the cone.
    pub fn observe(&mut self, m: u32, sums: &[f64], fudge: &Fudge) -> bool {
        let r = self.lag;
        let circ = |k: u32| 0.5f64.powi(k as i32);
        let hat = |k: u32| fudge.eval(k) / ((1.0 + fudge.eval(r)) * circ(r));
        let top = m.saturating_sub(r);
        for l in self.lstar..=top {
            let Some(&s) = sums.get(l as usize) else {
                continue;
            };
            // never tighter than the allowance at the lag distance
            let c = (hat(m - l) * circ(m - l)).max(hat(r) * circ(r));
            let lo = self.low.entry(l).or_insert(0.0);
            *lo = lo.max(s / (1.0 + c));
            if c < 1.0 {
                let up = self.up.entry(l).or_insert(f64::INFINITY);
                *up = up.min(s / (1.0 - c));
            }
        }
        self.violated()
    }

    pub fn violated(&self) -> bool {
        self.low
            .iter()
            .any(|(l, lo)| self.up.get(l).is_some_and(|up| lo > up))
    }
}

/// Runs a [`ConeMonitor`] over a history of `(m, block sums)` snapshots.
///
/// ```
/// use gailrs::qmc::{cone_check, Fudge};
///
/// let f = Fudge::default();
/// assert!(!cone_check(&[(10, vec![0.0; 11])], &f, 4));
/// // a block that carried mass at one level and none at the next
/// let mut a = vec![0.0; 11];
/// a[6] = 1.0;
/// assert!(cone_check(&[(10, a), (11, vec![0.0; 12])], &f, 4));
/// ```
pub fn cone_check(history: &[(u32, Vec<f64>)], fudge: &Fudge, lag: u32) -> bool {
    let Some(&(m0, _)) = history.first() else {
        return false;
    };
    let mut mon = ConeMonitor::new(m0, lag);
    let mut bad = false;
    for (m, sums) in history {
        bad |= mon.observe(*m, sums, fudge);
    }
    bad
}

/// Maps unit-cube points onto the box in place and returns the scale that
/// turns a sample mean into the integral.
pub fn measure_map(points: &mut [f64], b: &Hyperbox) -> f64 {
    let d = b.dim();
    match b.measure {
        Measure::Uniform => {
            for row in points.chunks_exact_mut(d) {
                for ((x, l), u) in row.iter_mut().zip(&b.lower).zip(&b.upper) {
                    *x = l + (u - l) * *x;
                }
            }
        }
        Measure::Normal => points.iter_mut().for_each(|x| *x = norm_inv(*x)),
    }
    b.volume()
}

enum Net {
    Lattice(LatticeGenerator, Periodizer),
    Sobol(SobolGenerator),
}

enum Coef {
    Walsh(Vec<f64>),
    Fourier(Vec<Complex64>),
}

impl Coef {
    fn abs(&self, k: usize) -> f64 {
        match self {
            Coef::Walsh(v) => v[k].abs(),
            Coef::Fourier(v) => v[k].norm(),
        }
    }
}

impl Net {
    fn first(&self, m: u32) -> Result<PointBlock> {
        match self {
            Net::Lattice(g, _) => g.first(m),
            Net::Sobol(g) => g.first(m),
        }
    }

    fn block(&self, m: u32) -> Result<PointBlock> {
        match self {
            Net::Lattice(g, _) => g.block(m - 1, m),
            Net::Sobol(g) => g.block(m - 1, m),
        }
    }

    /// Position of sequence point `i` in natural order among the first `2^m`.
    fn natural(&self, i: u64, m: u32) -> usize {
        match self {
            Net::Lattice(..) => bitrev(i, m) as usize,
            Net::Sobol(_) => i as usize,
        }
    }

    /// Normalized coefficients of values given in natural order.
    fn coefficients(&self, y: Vec<f64>) -> Result<Coef> {
        let s = 1.0 / y.len() as f64;
        match self {
            Net::Sobol(_) => {
                let mut v = y;
                fwht_inplace(&mut v)?;
                v.iter_mut().for_each(|c| *c *= s);
                Ok(Coef::Walsh(v))
            }
            Net::Lattice(..) => {
                let c: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let mut out = fft(&c)?;
                out.iter_mut().for_each(|c| *c *= s);
                Ok(Coef::Fourier(out))
            }
        }
    }

    /// Level `m` coefficients from the level `m-1` ones (`old`) and the
    /// coefficients of the new half (`new`), each normalized by its length.
    fn combine(&self, old: Coef, new: Coef) -> Coef {
        match (old, new) {
            (Coef::Walsh(a), Coef::Walsh(b)) => {
                let h = a.len();
                let mut y = vec![0.0; 2 * h];
                for k in 0..h {
                    y[k] = 0.5 * (a[k] + b[k]);
                    y[k + h] = 0.5 * (a[k] - b[k]);
                }
                Coef::Walsh(y)
            }
            (Coef::Fourier(a), Coef::Fourier(b)) => {
                let h = a.len();
                let n = 2 * h;
                let mut y = vec![Complex64::new(0.0, 0.0); n];
                for (k, slot) in y.iter_mut().enumerate() {
                    let w = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64);
                    *slot = 0.5 * (a[k % h] + w * b[k % h]);
                }
                Coef::Fourier(y)
            }
            _ => unreachable!("coefficient kinds never mix"),
        }
    }

    /// The second half of level `m`, in natural order relative to itself.
    fn new_half_position(&self, i: u64, m: u32) -> usize {
        let h = 1u64 << (m - 1);
        match self {
            Net::Lattice(..) => bitrev(i - h, m - 1) as usize,
            Net::Sobol(_) => (i - h) as usize,
        }
    }
}

/// Reorders the wavenumber map so that, within each dyadic level from
/// `from` down to `to + 1`, the larger of two aliased coefficients comes
/// first.
fn update_kmap(kmap: &mut [usize], coef: &Coef, from: u32, to: u32) {
    let n = kmap.len();
    let mut l = from;
    while l > to {
        let nl = 1usize << l;
        let stride = nl << 1;
        for p in 1..nl {
            if coef.abs(kmap[p + nl]) > coef.abs(kmap[p]) {
                let mut j = 0;
                while p + nl + j < n {
                    kmap.swap(p + j, p + nl + j);
                    j += stride;
                }
            }
        }
        l -= 1;
    }
}

fn block_sums(kmap: &[usize], coef: &Coef, m: u32) -> Vec<f64> {
    let mut s = vec![coef.abs(kmap[0])];
    for l in 1..=m {
        let lo = 1usize << (l - 1);
        let hi = 1usize << l;
        s.push((lo..hi).map(|p| coef.abs(kmap[p])).sum());
    }
    s
}

/// Neumaier compensated sum.
#[derive(Default, Clone, Copy)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }

    fn value(self) -> f64 {
        self.s + self.c
    }
}

type Integrand<'a> = dyn Fn(&[f64]) -> Vec<f64> + Sync + 'a;

fn values(f: &Integrand<'_>, block: &PointBlock, net: &Net, b: &Hyperbox) -> Result<Vec<f64>> {
    let d = block.dim;
    let mut pts = block.data.clone();
    let n = block.len();
    let mut w = vec![1.0; n];
    if let Net::Lattice(_, t) = net {
        for (row, wi) in pts.chunks_exact_mut(d).zip(w.iter_mut()) {
            *wi = t.apply(row);
        }
    }
    measure_map(&mut pts, b);
    let y = f(&pts);
    if y.len() != n {
        return Err(Error::Config(format!("integrand returned {} values for {n} points", y.len())));
    }
    let out: Vec<f64> = y
        .iter()
        .zip(&w)
        .map(|(&v, &wi)| if wi == 0.0 { 0.0 } else { v * wi })
        .collect();
    check_finite(&out, |i| format!("{:?}", &pts[i * d..(i + 1) * d]))?;
    Ok(out)
}

fn run(
    f: &Integrand<'_>,
    b: &Hyperbox,
    p: &QmcParams,
    net: Net,
    algorithm: Algorithm,
) -> Result<QmcResult> {
    let start = Instant::now();
    let d = b.dim();
    let scale = b.volume();
    let r = p.lag;
    let mut flags = ExitFlags::default();
    let mut m = p.mmin;

    let first = net.first(m)?;
    let y = values(f, &first, &net, b)?;
    let mut sum = Sum::default();
    let mut sum_abs = Sum::default();
    let mut nat = vec![0.0; y.len()];
    for (&i, &v) in first.index.iter().zip(&y) {
        nat[net.natural(i, m)] = v;
        sum.add(v);
        sum_abs.add(v.abs());
    }
    let mut coef = net.coefficients(nat)?;
    let mut kmap: Vec<usize> = (0..1usize << m).collect();
    update_kmap(&mut kmap, &coef, m - 1, 0);
    let mut cone = ConeMonitor::new(p.mmin, r);
    let mut sums = block_sums(&kmap, &coef, m);
    if cone.observe(m, &sums, &p.fudge) {
        flags.set(ExitFlags::CONE);
    }
    let mut history = Vec::new();
    let (q, bound) = loop {
        let n = (1u64 << m) as f64;
        let mags: Vec<f64> = kmap.iter().map(|&k| coef.abs(k)).collect();
        let rounding = 4.0 * (m + 1) as f64 * f64::EPSILON * sum_abs.value() / n;
        let bound = scale * (coeff_error_bound(&mags, m, r, &p.fudge) + rounding);
        let q = scale * sum.value() / n;
        history.push(serde_json::json!({ "n": 1u64 << m, "q": q, "bound_err": bound, "block_sums": sums }));
        if bound <= p.tol.certified_target(q.abs()) {
            break (q, bound);
        }
        if m >= p.mmax {
            flags.set(ExitFlags::BUDGET);
            break (q, bound);
        }
        m += 1;
        let blk = net.block(m)?;
        let y = values(f, &blk, &net, b)?;
        let mut half = vec![0.0; y.len()];
        for (&i, &v) in blk.index.iter().zip(&y) {
            half[net.new_half_position(i, m)] = v;
            sum.add(v);
            sum_abs.add(v.abs());
        }
        let new = net.coefficients(half)?;
        coef = net.combine(coef, new);
        let h = kmap.len();
        kmap.extend_from_within(..);
        kmap[h..].iter_mut().for_each(|k| *k += h);
        update_kmap(&mut kmap, &coef, m - 1, m.saturating_sub(r + 1));
        sums = block_sums(&kmap, &coef, m);
        if cone.observe(m, &sums, &p.fudge) {
            flags.set(ExitFlags::CONE);
        }
    };
    let n = 1u64 << m;
    let mut diag = SolverDiagnostics::new(algorithm);
    diag.n_evals = n;
    diag.n_points = n;
    diag.iterations = (m - p.mmin + 1) as u64;
    diag.errest = bound;
    diag.exit_flags = flags;
    diag.put("bound_err", bound);
    diag.put("d", d);
    diag.put("m", m);
    diag.put("mmin", p.mmin);
    diag.put("mmax", p.mmax);
    diag.put("lag", r);
    diag.put("history", history);
    if let Net::Lattice(_, t) = &net {
        diag.put("transform", t.name());
    } else {
        diag.put("scramble", p.scramble);
    }
    diag.stop_clock(start);
    Ok(QmcResult {
        q,
        d,
        n,
        bound_err: bound,
        exit_flags: flags,
        elapsed_seconds: diag.elapsed_seconds,
        diagnostics: diag,
    })
}

fn check_box(b: &Hyperbox, max_dim: usize) -> Result<()> {
    b.validate()?;
    if b.dim() > max_dim {
        return config(format!("dimension {} exceeds {max_dim}", b.dim()));
    }
    Ok(())
}

/// Adaptive cubature on a randomly shifted rank-1 lattice.
///
/// `f` receives a row-major `n x d` array of points in the box (or in `R^d`
/// under the normal measure) and returns `n` values.
///
/// ```
/// use gailrs::qmc::{cub_lattice, Periodizer, QmcParams};
/// use gailrs::{Hyperbox, RngStream};
///
/// let f = |x: &[f64]| x.chunks(2).map(|r| r[0] * r[1]).collect::<Vec<f64>>();
/// let p = QmcParams::default().with_tol(1e-5, 0.0).with_transform(Periodizer::C1sin);
/// let res = cub_lattice(&f, &Hyperbox::unit(2), &p, &mut RngStream::new(7, 0)).unwrap();
/// assert!((res.q - 0.25).abs() <= 1e-5);
/// ```
pub fn cub_lattice(
    f: &Integrand<'_>,
    b: &Hyperbox,
    p: &QmcParams,
    rng: &mut RngStream,
) -> Result<QmcResult> {
    check_box(b, LATTICE_MAX_DIM)?;
    p.validate(LATTICE_MAX_M)?;
    let g = LatticeGenerator::shifted(b.dim(), rng)?;
    run(f, b, p, Net::Lattice(g, p.transform), Algorithm::CubLattice)
}

/// Adaptive cubature on a digitally shifted Sobol' sequence, linearly
/// scrambled unless `p.scramble` is off. The `transform` field of `p` is
/// ignored.
pub fn cub_sobol(
    f: &Integrand<'_>,
    b: &Hyperbox,
    p: &QmcParams,
    rng: &mut RngStream,
) -> Result<QmcResult> {
    check_box(b, SOBOL_MAX_DIM)?;
    p.validate(SOBOL_MAX_M)?;
    let g = SobolGenerator::shifted(b.dim(), rng)?;
    let g = if p.scramble { g.linear_scramble(rng) } else { g };
    run(f, b, p, Net::Sobol(g), Algorithm::CubSobol)
}
