//! Guaranteed Monte Carlo: fixed-width confidence intervals for a general
//! mean, for a Bernoulli proportion, and for integrals over a hyperbox.

mod bernoulli;
mod cubature;
mod mean;
mod sampling;

pub use bernoulli::{hoeffding_n, mean_mc_ber};
pub use cubature::cub_mc;
pub use mean::{certified_halfwidth, kurtmax, mean_mc, n_berry_esseen, two_stage_n};
pub use sampling::{Yrand, CHUNK};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{Budget, SolverDiagnostics};
use crate::error::{config, Result};
use crate::tolerance::ToleranceSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum McFlag {
    Unchecked,
    CheckedByMeanMC,
    CheckedByCubMC,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McParams {
    pub tol: ToleranceSpec,
    pub alpha: f64,
    pub fudge: f64,
    pub n_sig: u64,
    pub n1: u64,
    pub budget: Budget,
    pub flag: McFlag,
    /// Worker threads for sampling. Results do not depend on it.
    pub threads: usize,
}

impl Default for McParams {
    fn default() -> Self {
        McParams {
            tol: ToleranceSpec::new(1e-2, 1e-1),
            alpha: 0.01,
            fudge: 1.2,
            n_sig: 10_000,
            n1: 10_000,
            budget: Budget::default(),
            flag: McFlag::Unchecked,
            threads: 1,
        }
    }
}

impl McParams {
    pub fn with_tol(mut self, abstol: f64, reltol: f64) -> Self {
        self.tol = ToleranceSpec {
            abstol,
            reltol,
            ..self.tol
        };
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.tol.validate()?;
        self.budget.validate()?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return config(format!("alpha must lie in (0,1), got {}", self.alpha));
        }
        if !(self.fudge > 1.0) || !self.fudge.is_finite() {
            return config(format!("fudge must be > 1, got {}", self.fudge));
        }
        if self.n_sig < 30 || self.n1 < 30 {
            return config("nSig and n1 must be at least 30");
        }
        if self.threads == 0 {
            return config("threads must be at least 1");
        }
        Ok(())
    }
}

/// Iteration record of a [`mean_mc`] run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct McTrace {
    pub tau: u64,
    pub n: Vec<u64>,
    pub hmu: Vec<f64>,
    pub tol: Vec<f64>,
    pub var: f64,
    pub kurtmax: f64,
    pub nremain: u64,
    pub ntot: u64,
}

impl McTrace {
    /// Reads the trace back from a diagnostics record.
    pub fn from_diagnostics(d: &SolverDiagnostics) -> Option<McTrace> {
        serde_json::from_value(d.extra.get("trace")?.clone()).ok()
    }
}
