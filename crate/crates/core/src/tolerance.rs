//! Generalized error tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TolType {
    /// `max(abstol, reltol*|mu|)`
    Max,
    /// `theta*abstol + (1-theta)*reltol*|mu|`
    Comb,
}

/// Absolute and relative tolerances plus the rule combining them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSpec {
    pub abstol: f64,
    pub reltol: f64,
    pub toltype: TolType,
    pub theta: f64,
}

impl ToleranceSpec {
    pub fn new(abstol: f64, reltol: f64) -> Self {
        ToleranceSpec {
            abstol,
            reltol,
            toltype: TolType::Max,
            theta: 1.0,
        }
    }

    pub fn comb(abstol: f64, reltol: f64, theta: f64) -> Self {
        ToleranceSpec {
            abstol,
            reltol,
            toltype: TolType::Comb,
            theta,
        }
    }

    pub fn absolute(abstol: f64) -> Self {
        Self::new(abstol, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abstol >= 0.0) || !self.abstol.is_finite() {
            return config(format!("abstol must be finite and >= 0, got {}", self.abstol));
        }
        if !(0.0..=1.0).contains(&self.reltol) {
            return config(format!("reltol must lie in [0,1], got {}", self.reltol));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return config(format!("theta must lie in [0,1], got {}", self.theta));
        }
        match self.toltype {
            TolType::Max if self.abstol == 0.0 && self.reltol == 0.0 => {
                config("abstol and reltol cannot both be zero")
            }
            TolType::Comb if self.theta == 1.0 && self.abstol == 0.0 => {
                config("theta = 1 needs abstol > 0")
            }
            TolType::Comb if self.theta == 0.0 && self.reltol == 0.0 => {
                config("theta = 0 needs reltol > 0")
            }
            TolType::Comb if self.abstol == 0.0 && self.reltol == 0.0 => {
                config("abstol and reltol cannot both be zero")
            }
            _ => Ok(()),
        }
    }

    /// Tolerance at an estimand of magnitude `mu_abs`. Assumes `self` is valid.
    pub fn tolfun(&self, mu_abs: f64) -> f64 {
        let mu_abs = mu_abs.abs();
        match self.toltype {
            TolType::Max => self.abstol.max(self.reltol * mu_abs),
            TolType::Comb => {
                self.theta * self.abstol + (1.0 - self.theta) * self.reltol * mu_abs
            }
        }
    }

    /// Largest `eps` with `eps <= tolfun(|mu_hat| - eps)`, i.e. the half-width
    /// that certifies the tolerance at every estimand in `[mu_hat-eps, mu_hat+eps]`.
    pub fn certified_target(&self, mu_hat_abs: f64) -> f64 {
        let m = mu_hat_abs.abs();
        let (a, r) = match self.toltype {
            TolType::Max => (self.abstol, self.reltol),
            TolType::Comb => (self.theta * self.abstol, (1.0 - self.theta) * self.reltol),
        };
        let e = match self.toltype {
            TolType::Max => r * m / (1.0 + r),
            TolType::Comb => (a + r * m) / (1.0 + r),
        };
        a.max(e)
    }
}

/// Checked form of [`ToleranceSpec::tolfun`].
pub fn tolfun(spec: &ToleranceSpec, mu_abs: f64) -> Result<f64> {
    spec.validate()?;
    if !(mu_abs >= 0.0) {
        return config(format!("mu_abs must be >= 0, got {mu_abs}"));
    }
    Ok(spec.tolfun(mu_abs))
}
