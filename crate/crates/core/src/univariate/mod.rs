//! Guaranteed univariate approximation, minimization and integration on a
//! finite interval.

mod approx;
mod funappx;
mod funmin;
mod integral;
mod subinterval;

pub use approx::{eval_approx, PiecewiseLinearApprox};
pub use funappx::funappx;
pub use funmin::{funmin, MinimizerResult};
pub use integral::integral;

use crate::diagnostics::Budget;
use crate::error::{check_finite, config, Error, Result};

/// An integrand or approximand on `[a, b]` together with its tolerances.
pub struct IntervalProblem<'a> {
    f: Box<dyn Fn(&[f64]) -> Vec<f64> + 'a>,
    pub a: f64,
    pub b: f64,
    pub abstol: f64,
    pub nlo: usize,
    pub nhi: usize,
    pub budget: Budget,
}

impl<'a> IntervalProblem<'a> {
    /// `f` maps a batch of abscissae to values of the same length.
    pub fn new(f: impl Fn(&[f64]) -> Vec<f64> + 'a, a: f64, b: f64) -> Self {
        IntervalProblem {
            f: Box::new(f),
            a,
            b,
            abstol: 1e-6,
            nlo: 10,
            nhi: 1000,
            budget: Budget::default(),
        }
    }

    pub fn from_scalar(f: impl Fn(f64) -> f64 + 'a, a: f64, b: f64) -> Self {
        Self::new(move |xs: &[f64]| xs.iter().map(|&x| f(x)).collect(), a, b)
    }

    pub fn abstol(mut self, abstol: f64) -> Self {
        self.abstol = abstol;
        self
    }

    pub fn nlo_nhi(mut self, nlo: usize, nhi: usize) -> Self {
        self.nlo = nlo;
        self.nhi = nhi;
        self
    }

    pub fn nmax(mut self, nmax: u64) -> Self {
        self.budget.nmax = nmax;
        self
    }

    pub fn maxiter(mut self, maxiter: u64) -> Self {
        self.budget.maxiter = maxiter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !self.b.is_finite() {
            return config("interval end points must be finite");
        }
        if !(self.a < self.b) {
            return config(format!("need a < b, got a = {}, b = {}", self.a, self.b));
        }
        if !(self.abstol > 0.0) {
            return config(format!("abstol must be positive, got {}", self.abstol));
        }
        self.budget.validate()?;
        ninit_rule(self.nlo, self.nhi, self.a, self.b).map(|_| ())
    }

    pub(crate) fn eval(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if xs.is_empty() {
            return Ok(Vec::new());
        }
        let ys = (self.f)(xs);
        if ys.len() != xs.len() {
            return Err(Error::Config(format!(
                "integrand returned {} values for {} points",
                ys.len(),
                xs.len()
            )));
        }
        check_finite(&ys, |i| format!("x = {}", xs[i]))?;
        Ok(ys)
    }
}

/// Initial number of points from `nlo`, `nhi` and the interval length.
pub fn ninit_rule(nlo: usize, nhi: usize, a: f64, b: f64) -> Result<usize> {
    if nlo < 3 || nlo > nhi {
        return config(format!("need 3 <= nlo <= nhi, got nlo = {nlo}, nhi = {nhi}"));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return config(format!("need finite a < b, got a = {a}, b = {b}"));
    }
    let v = nhi as f64 * (nlo as f64 / nhi as f64).powf(1.0 / (1.0 + (b - a)));
    // absorb rounding in products that are integers in exact arithmetic
    let n = (v - 1e-9 * v).ceil() as usize;
    Ok(n.clamp(nlo, nhi).max(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ninit_values() {
        assert_eq!(ninit_rule(10, 1000, 0.0, 1.0).unwrap(), 100);
        assert_eq!(ninit_rule(10, 1000, 0.0, 100.0).unwrap(), 956);
        assert_eq!(ninit_rule(10, 100, -20.0, 20.0).unwrap(), 95);
        assert_eq!(ninit_rule(10, 1000, -10.0, 50.0).unwrap(), 928);
        assert_eq!(ninit_rule(10, 10, -2.0, 2.0).unwrap(), 10);
        assert_eq!(ninit_rule(10, 100, -13.0, 8.0).unwrap(), 91);
        assert_eq!(ninit_rule(10, 100, -2.0, 2.0).unwrap(), 64);
        assert_eq!(ninit_rule(100, 10000, 1.0, 2.0).unwrap(), 1000);
    }

    #[test]
    fn ninit_rejects() {
        assert!(ninit_rule(2, 10, 0.0, 1.0).is_err());
        assert!(ninit_rule(20, 10, 0.0, 1.0).is_err());
        assert!(ninit_rule(10, 100, 1.0, 1.0).is_err());
    }

    #[test]
    fn problem_validation() {
        let p = IntervalProblem::from_scalar(|x| x, 1.0, 1.0);
        assert!(p.validate().is_err());
        let p = IntervalProblem::from_scalar(|x| x, 0.0, f64::INFINITY);
        assert!(p.validate().is_err());
        let p = IntervalProblem::from_scalar(|x| x, 0.0, 1.0).abstol(0.0);
        assert!(p.validate().is_err());
    }
}
