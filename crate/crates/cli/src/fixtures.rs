//! Built-in fixture table: every documented example with its inputs and a
//! reference value to check against.

use clap::Parser;
use serde_json::Value;

use gailrs::univariate::PiecewiseLinearApprox;

use crate::args::Cli;
use crate::commands::{requested_tolerance, run_solver};
use crate::report::{ExamplesReport, RunReport, Truth};

const CLOSED: &str = "closed form";
const ORACLE: &str = "oracle";

/// `(sqrt(pi)/2 (erf 2 + erf 1))^2`, the integral of `exp(-x1^2-x2^2)` over `[-1,2]^2`.
pub const ERF_SQUARE_M1_2: f64 = 2.653333204732652;
/// `(sqrt(pi)/2 erf 1)^2`, the same integrand over `[0,1]^2`.
pub const ERF_SQUARE_0_1: f64 = 0.5577462853510336;
/// At-the-money European call, `S0 = K = 100`, `r = 0`, `sigma = 0.05`, `T = 1`,
/// discounted by `exp(-sigma^2/2)` as in the integrand.
pub const CALL_VALUE: f64 = 2.056341537608203;
/// Integral of `exp(-x^2)` over `[1,2]`.
pub const GAUSS_TAIL_1_2: f64 = 0.13525725794999465;

#[derive(Debug, Clone, Copy)]
pub enum Check {
    /// `|estimate - value| <= tolfun(|value|)`.
    Close { value: f64, source: &'static str },
    /// Sup error of the approximant on a 10^5 point grid is at most abstol.
    Approx(fn(f64) -> f64),
    /// Minimum value and a point every returned interval set must cover.
    Minimum { fmin: f64, xstar: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub argv: &'static [&'static str],
    pub check: Check,
}

fn square(x: f64) -> f64 {
    x * x
}

const PARABOLA: &str = "(x-0.3)^2+1";
const MIN: Check = Check::Minimum { fmin: 1.0, xstar: 0.3 };

const fn close(value: f64, source: &'static str) -> Check {
    Check::Close { value, source }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "funappx/square", argv: &["funappx", "--f", "x^2"], check: Check::Approx(square) },
    Fixture {
        name: "funappx/square-0-100",
        argv: &["funappx", "--f", "x^2", "--a", "0", "--b", "100", "--abstol", "1e-7", "--nlo", "10", "--nhi", "1000", "--nmax", "1e8"],
        check: Check::Approx(square),
    },
    Fixture {
        name: "funappx/square-pm20",
        argv: &["funappx", "--f", "x^2", "--a", "-20", "--b", "20", "--nlo", "10", "--nhi", "100", "--nmax", "1e8", "--abstol", "1e-7"],
        check: Check::Approx(square),
    },
    Fixture {
        name: "funappx/square-m10-50",
        argv: &["funappx", "--f", "x^2", "--a", "-10", "--b", "50", "--nmax", "1e6", "--abstol", "1e-7"],
        check: Check::Approx(square),
    },
    Fixture { name: "funmin/parabola", argv: &["funmin", "--f", PARABOLA], check: MIN },
    Fixture {
        name: "funmin/parabola-pm2",
        argv: &["funmin", "--f", PARABOLA, "--a", "-2", "--b", "2", "--abstol", "1e-7", "--tolx", "1e-4", "--nlo", "10", "--nhi", "10", "--nmax", "1e6"],
        check: MIN,
    },
    Fixture {
        name: "funmin/parabola-m13-8",
        argv: &["funmin", "--f", PARABOLA, "--a", "-13", "--b", "8", "--abstol", "1e-7", "--tolx", "1e-4", "--nlo", "10", "--nhi", "100", "--nmax", "1e6"],
        check: MIN,
    },
    Fixture {
        name: "funmin/parabola-loose",
        argv: &["funmin", "--f", PARABOLA, "--a", "-2", "--b", "2", "--nhi", "100", "--nlo", "10", "--nmax", "1e6", "--abstol", "1e-4", "--tolx", "1e-2"],
        check: MIN,
    },
    Fixture { name: "integral/square", argv: &["integral", "--f", "x^2"], check: close(1.0 / 3.0, CLOSED) },
    Fixture {
        name: "integral/gauss-1-2",
        argv: &["integral", "--f", "exp(-x^2)", "--a", "1", "--b", "2", "--nlo", "100", "--nhi", "10000", "--abstol", "1e-5", "--nmax", "1e7"],
        check: close(GAUSS_TAIL_1_2, ORACLE),
    },
    Fixture {
        name: "meanmc/square",
        argv: &["meanmc", "--f", "x^2", "--abstol", "1e-3", "--reltol", "0", "--alpha", "0.05"],
        check: close(1.0 / 3.0, CLOSED),
    },
    Fixture {
        name: "meanmc/exp",
        argv: &["meanmc", "--f", "exp(x)", "--abstol", "1e-3", "--reltol", "0"],
        check: close(std::f64::consts::E - 1.0, CLOSED),
    },
    Fixture {
        name: "meanmc/cos",
        argv: &["meanmc", "--f", "cos(x)", "--reltol", "1e-2", "--abstol", "0", "--alpha", "0.05"],
        check: close(0.8414709848078965, CLOSED),
    },
    Fixture {
        name: "meanmcber/ninth",
        argv: &["meanmcber", "--p", "0.1111111111111111", "--abstol", "1e-3", "--alpha", "0.01", "--nmax", "1e9"],
        check: close(1.0 / 9.0, CLOSED),
    },
    Fixture {
        name: "meanmcber/ninth-fine",
        argv: &["meanmcber", "--p", "0.1111111111111111", "--abstol", "1e-4"],
        check: close(1.0 / 9.0, CLOSED),
    },
    Fixture {
        name: "meanmcber/ninth-coarse",
        argv: &["meanmcber", "--p", "0.1111111111111111", "--abstol", "1e-2", "--alpha", "0.05"],
        check: close(1.0 / 9.0, CLOSED),
    },
    Fixture {
        name: "cubmc/sin-1-2",
        argv: &["cubmc", "--f", "sin(x)", "--box", "1,2", "--abstol", "1e-3", "--reltol", "1e-2"],
        check: close(0.9564491424152821, CLOSED),
    },
    Fixture {
        name: "cubmc/gauss-unit-square",
        argv: &["cubmc", "--f", "exp(-x1^2-x2^2)", "--box", "0,1;0,1", "--abstol", "1e-3", "--reltol", "1e-13"],
        check: close(ERF_SQUARE_0_1, ORACLE),
    },
    Fixture {
        name: "cubmc/prod-shifted-3d",
        argv: &["cubmc", "--f", "2^3*prod(x)+0.555", "--dim", "3", "--abstol", "1e-3", "--reltol", "1e-3"],
        check: close(1.555, CLOSED),
    },
    Fixture {
        name: "cubmc/gauss-normal",
        argv: &["cubmc", "--f", "exp(-x1^2-x2^2)", "--dim", "2", "--measure", "normal", "--abstol", "0", "--reltol", "1e-2"],
        check: close(1.0 / 3.0, CLOSED),
    },
    Fixture {
        name: "cublattice/prod-2d",
        argv: &["cublattice", "--f", "prod(x)", "--box", "0,1;0,1", "--abstol", "1e-5", "--reltol", "0", "--transform", "C1sin"],
        check: close(0.25, CLOSED),
    },
    Fixture {
        name: "cublattice/squares-normal-3d",
        argv: &["cublattice", "--f", "x1^2*x2^2*x3^2", "--dim", "3", "--measure", "normal", "--abstol", "1e-3", "--reltol", "1e-3", "--transform", "C1sin"],
        check: close(1.0, CLOSED),
    },
    Fixture {
        name: "cublattice/gauss-m1-2",
        argv: &["cublattice", "--f", "exp(-x1^2-x2^2)", "--box", "-1,2;-1,2", "--abstol", "1e-3", "--reltol", "1e-2", "--transform", "C1"],
        check: close(ERF_SQUARE_M1_2, ORACLE),
    },
    Fixture {
        name: "cublattice/call",
        argv: &["cublattice", "--f", "exp(-0.05^2/2)*max(100*exp(0.05*x)-100,0)", "--measure", "normal", "--abstol", "1e-4", "--reltol", "1e-2", "--transform", "C1sin"],
        check: close(CALL_VALUE, ORACLE),
    },
    Fixture {
        name: "cublattice/prod-5d",
        argv: &["cublattice", "--f", "8*prod(x)", "--dim", "5", "--abstol", "1e-5", "--reltol", "0"],
        check: close(0.25, CLOSED),
    },
    Fixture {
        name: "cublattice/poisson-kernel",
        argv: &["cublattice", "--f", "3/(5-4*cos(2*pi*x))", "--box", "0,1", "--abstol", "1e-5", "--reltol", "0", "--transform", "id"],
        check: close(1.0, CLOSED),
    },
    Fixture {
        name: "cubsobol/prod-2d",
        argv: &["cubsobol", "--f", "prod(x)", "--box", "0,1;0,1", "--abstol", "1e-5", "--reltol", "0"],
        check: close(0.25, CLOSED),
    },
    Fixture {
        name: "cubsobol/squares-normal-3d",
        argv: &["cubsobol", "--f", "x1^2*x2^2*x3^2", "--dim", "3", "--measure", "normal", "--abstol", "1e-3", "--reltol", "1e-3"],
        check: close(1.0, CLOSED),
    },
    Fixture {
        name: "cubsobol/gauss-m1-2",
        argv: &["cubsobol", "--f", "exp(-x1^2-x2^2)", "--box", "-1,2;-1,2", "--abstol", "1e-3", "--reltol", "1e-2"],
        check: close(ERF_SQUARE_M1_2, ORACLE),
    },
    Fixture {
        name: "cubsobol/call",
        argv: &["cubsobol", "--f", "exp(-0.05^2/2)*max(100*exp(0.05*x)-100,0)", "--measure", "normal", "--abstol", "1e-4", "--reltol", "1e-2"],
        check: close(CALL_VALUE, ORACLE),
    },
    Fixture {
        name: "cubsobol/prod-5d",
        argv: &["cubsobol", "--f", "8*prod(x)", "--dim", "5", "--abstol", "1e-5", "--reltol", "0"],
        check: close(0.25, CLOSED),
    },
];

fn stochastic(cmd: &str) -> bool {
    !matches!(cmd, "funappx" | "funmin" | "integral")
}

/// Sup of `|approx - f|` over `n` equally spaced points of `[a, b]`.
pub fn sup_error(approx: &PiecewiseLinearApprox, f: fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    (0..n)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (n - 1) as f64;
            (approx.eval(x) - f(x)).abs()
        })
        .fold(0.0, f64::max)
}

/// Runs one fixture. Configuration errors are reported as failures.
pub fn run_fixture(fx: &Fixture, seed: u64) -> RunReport {
    let mut argv: Vec<String> = std::iter::once("gailrs".to_string())
        .chain(fx.argv.iter().map(|s| s.to_string()))
        .collect();
    if stochastic(fx.argv[0]) {
        argv.push("--seed".into());
        argv.push(seed.to_string());
    }
    let cmd = Cli::try_parse_from(&argv).expect("fixture arguments parse").command;
    let tol = requested_tolerance(&cmd).expect("fixture is a solver");
    let (mut rep, approx) = match run_solver(&cmd) {
        Ok(r) => r,
        Err(e) => {
            return RunReport {
                command: cmd.name().into(),
                fixture: Some(fx.name.into()),
                inputs: serde_json::to_value(&cmd).unwrap_or(Value::Null),
                estimate: Value::String(e.to_string()),
                diagnostics: gailrs::SolverDiagnostics::new(gailrs::Algorithm::Funappx),
                pass: Some(false),
                truth: None,
            }
        }
    };
    rep.fixture = Some(fx.name.into());
    let pass = match fx.check {
        Check::Close { value, source } => {
            rep.truth = Some(Truth { value, source: source.into() });
            rep.scalar().is_some_and(|q| (q - value).abs() <= tol.tolfun(value.abs()))
        }
        Check::Approx(f) => {
            let approx = approx.expect("funappx returns an approximant");
            let (a, b) = (approx.knots()[0], *approx.knots().last().unwrap());
            let err = sup_error(&approx, f, a, b, 100_000);
            rep.diagnostics.put("sup_error_on_grid", err);
            err <= tol.abstol
        }
        Check::Minimum { fmin, xstar } => {
            rep.truth = Some(Truth { value: fmin, source: CLOSED.into() });
            let got = rep.scalar().unwrap_or(f64::NAN);
            let intervals: Vec<[f64; 2]> = serde_json::from_value(rep.estimate["intervals"].clone()).unwrap_or_default();
            let covered = intervals.iter().any(|iv| iv[0] <= xstar && xstar <= iv[1]);
            let volume = rep.estimate["volume_x"].as_f64().unwrap_or(f64::INFINITY);
            let tolx = rep.inputs["tolx"].as_f64().unwrap_or(0.0);
            let branch = rep.diagnostics.errest <= tol.abstol || volume <= tolx;
            (got - fmin).abs() <= tol.abstol && covered && branch
        }
    };
    rep.pass = Some(pass);
    rep
}

/// Runs the whole fixture table with stochastic fixtures seeded by `seed`.
pub fn run_doc_examples(seed: u64) -> ExamplesReport {
    let reports: Vec<RunReport> = FIXTURES.iter().map(|fx| run_fixture(fx, seed)).collect();
    let passed = reports.iter().filter(|r| r.pass == Some(true)).count();
    ExamplesReport {
        seed,
        passed,
        failed: reports.len() - passed,
        reports,
    }
}
