//! Runs one parsed subcommand.

use serde_json::{json, Value};

use gailrs::expr::{parse, Expr};
use gailrs::montecarlo::{cub_mc, mean_mc, mean_mc_ber, McParams};
use gailrs::qmc::{cub_lattice, cub_sobol, QmcParams, QmcResult};
use gailrs::univariate::{funappx, funmin, integral, IntervalProblem, PiecewiseLinearApprox};
use gailrs::{Error, Hyperbox, Measure, Result, RngStream, SolverDiagnostics, TolType, ToleranceSpec};

use crate::args::{parse_box, Command, Domain, IntervalArgs, McArgs, MeasureKind, QmcArgs, TolArgs};
use crate::report::RunReport;

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn expr(text: &str, dim: usize) -> Result<Expr> {
    Ok(parse(text, dim)?)
}

/// Rows of `points` (row-major, width `d`) evaluated by `e`.
fn rows(e: &Expr, points: &[f64], d: usize) -> Vec<f64> {
    e.eval_batch(points, d).unwrap_or_else(|_| vec![f64::NAN; points.len() / d.max(1)])
}

fn problem<'a>(a: &IntervalArgs, e: &'a Expr) -> IntervalProblem<'a> {
    IntervalProblem::new(move |x: &[f64]| rows(e, x, 1), a.a, a.b)
        .abstol(a.abstol)
        .nlo_nhi(a.nlo, a.nhi)
        .nmax(a.nmax)
        .maxiter(a.maxiter)
}

pub fn tolerance(t: &TolArgs, abstol: f64, reltol: f64) -> ToleranceSpec {
    let abstol = t.abstol.unwrap_or(abstol);
    let reltol = t.reltol.unwrap_or(reltol);
    match TolType::from(t.toltype) {
        TolType::Max => ToleranceSpec::new(abstol, reltol),
        TolType::Comb => ToleranceSpec::comb(abstol, reltol, t.theta),
    }
}

fn mc_params(m: &McArgs) -> McParams {
    let mut p = McParams::default();
    p.tol = tolerance(&m.tol, p.tol.abstol, p.tol.reltol);
    p.alpha = m.alpha;
    p.fudge = m.fudge;
    p.n_sig = m.nsig;
    p.n1 = m.n1;
    p.budget.tbudget_seconds = m.tbudget;
    p.budget.nbudget = m.nbudget;
    p.threads = m.threads;
    p
}

fn qmc_params(q: &QmcArgs) -> QmcParams {
    let mut p = QmcParams::default();
    p.tol = tolerance(&q.tol, p.tol.abstol, p.tol.reltol);
    p.mmin = q.mmin;
    p.mmax = q.mmax;
    p
}

/// Tolerance the command was asked to meet, where it has one.
pub fn requested_tolerance(cmd: &Command) -> Option<ToleranceSpec> {
    Some(match cmd {
        Command::Funappx(a) => ToleranceSpec::absolute(a.interval.abstol),
        Command::Funmin(a) => ToleranceSpec::absolute(a.interval.abstol),
        Command::Integral(a) => ToleranceSpec::absolute(a.abstol),
        Command::Meanmc(a) => mc_params(&a.mc).tol,
        Command::Meanmcber(a) => ToleranceSpec::absolute(a.abstol),
        Command::Cubmc(a) => mc_params(&a.mc).tol,
        Command::Cublattice(a) => qmc_params(&a.qmc).tol,
        Command::Cubsobol(a) => qmc_params(&a.qmc).tol,
        Command::Examples(_) => return None,
    })
}

fn hyperbox(d: &Domain) -> Result<Hyperbox> {
    let measure = Measure::from(d.measure);
    let b = match &d.bounds {
        Some(s) => {
            let (lower, upper) = parse_box(s).map_err(bad)?;
            if let Some(n) = d.dim {
                if n != lower.len() {
                    return Err(bad(format!("--dim {n} does not match a box with {} coordinates", lower.len())));
                }
            }
            Hyperbox::new(lower, upper, measure)
        }
        None => {
            let n = d.dim.unwrap_or(1);
            if n == 0 {
                return Err(bad("--dim must be at least 1"));
            }
            match d.measure {
                MeasureKind::Uniform => Hyperbox::unit(n),
                MeasureKind::Normal => Hyperbox::normal(n),
            }
        }
    };
    b.validate()?;
    Ok(b)
}

fn report(cmd: &Command, estimate: Value, diagnostics: SolverDiagnostics) -> RunReport {
    RunReport {
        command: cmd.name().to_string(),
        fixture: None,
        inputs: serde_json::to_value(cmd).unwrap_or(Value::Null),
        estimate,
        diagnostics,
        pass: None,
        truth: None,
    }
}

fn qmc_report(cmd: &Command, r: QmcResult) -> RunReport {
    report(cmd, json!(r.q), r.diagnostics)
}

/// Runs a solver subcommand. `examples` is handled by the caller.
pub fn execute(cmd: &Command) -> Result<RunReport> {
    Ok(run_solver(cmd)?.0)
}

/// As [`execute`], also handing back the approximant built by funappx.
pub fn run_solver(cmd: &Command) -> Result<(RunReport, Option<PiecewiseLinearApprox>)> {
    let mut approx_out = None;
    let mut rep = match cmd {
        Command::Funappx(a) => {
            let e = expr(&a.interval.f, 1)?;
            let (approx, diag) = funappx(&problem(&a.interval, &e))?;
            let mut est = json!({
                "a": a.interval.a,
                "b": a.interval.b,
                "npoints": approx.knots().len(),
            });
            if let Some(n) = a.grid {
                let (lo, hi) = (a.interval.a, a.interval.b);
                let xs: Vec<f64> = match n {
                    0 => vec![],
                    1 => vec![lo],
                    _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
                };
                let grid: Vec<[f64; 2]> = xs.iter().map(|&x| [x, approx.eval(x)]).collect();
                est["grid"] = json!(grid);
            }
            approx_out = Some(approx);
            report(cmd, est, diag)
        }
        Command::Funmin(a) => {
            let e = expr(&a.interval.f, 1)?;
            let (m, diag) = funmin(&problem(&a.interval, &e), a.tolx)?;
            report(cmd, serde_json::to_value(&m).unwrap_or(Value::Null), diag)
        }
        Command::Integral(a) => {
            let e = expr(&a.f, 1)?;
            let (q, diag) = integral(&problem(a, &e))?;
            report(cmd, json!(q), diag)
        }
        Command::Meanmc(a) => {
            if a.dim == 0 {
                return Err(bad("--dim must be at least 1"));
            }
            let e = expr(&a.f, a.dim)?;
            let d = a.dim;
            let normal = a.measure == MeasureKind::Normal;
            let yrand = |r: &mut RngStream, n: usize| {
                let x = if normal { r.normals(n * d) } else { r.uniforms(n * d) };
                rows(&e, &x, d)
            };
            let (q, diag) = mean_mc(&yrand, &mc_params(&a.mc), &mut RngStream::new(a.mc.seed, 0))?;
            report(cmd, json!(q), diag)
        }
        Command::Meanmcber(a) => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(bad(format!("--p must lie in [0,1], got {}", a.p)));
            }
            let p = a.p;
            let yrand = |r: &mut RngStream, n: usize| {
                r.uniforms(n).into_iter().map(|u| if u < p { 1.0 } else { 0.0 }).collect()
            };
            let (q, diag) = mean_mc_ber(&yrand, a.abstol, a.alpha, a.nmax, &RngStream::new(a.seed, 0))?;
            report(cmd, json!(q), diag)
        }
        Command::Cubmc(a) => {
            let b = hyperbox(&a.domain)?;
            let d = b.dim();
            let e = expr(&a.domain.f, d)?;
            let f = |x: &[f64]| rows(&e, x, d);
            let (q, diag) = cub_mc(&f, &b, &mc_params(&a.mc), &RngStream::new(a.mc.seed, 0))?;
            report(cmd, json!(q), diag)
        }
        Command::Cublattice(a) => {
            let b = hyperbox(&a.qmc.domain)?;
            let d = b.dim();
            let e = expr(&a.qmc.domain.f, d)?;
            let f = |x: &[f64]| rows(&e, x, d);
            let p = qmc_params(&a.qmc).with_transform(a.transform);
            qmc_report(cmd, cub_lattice(&f, &b, &p, &mut RngStream::new(a.qmc.seed, 0))?)
        }
        Command::Cubsobol(a) => {
            let b = hyperbox(&a.qmc.domain)?;
            let d = b.dim();
            let e = expr(&a.qmc.domain.f, d)?;
            let f = |x: &[f64]| rows(&e, x, d);
            let mut p = qmc_params(&a.qmc);
            p.scramble = !a.no_scramble;
            qmc_report(cmd, cub_sobol(&f, &b, &p, &mut RngStream::new(a.qmc.seed, 0))?)
        }
        Command::Examples(_) => return Err(bad("examples is not a solver")),
    };
    if !cmd.output().timings {
        rep.diagnostics.elapsed_seconds = 0.0;
    }
    Ok((rep, approx_out))
}
