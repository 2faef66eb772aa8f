//! Per-run output records and budgets.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{config, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Funappx,
    Funmin,
    Integral,
    MeanMc,
    MeanMcBer,
    CubMc,
    CubLattice,
    CubSobol,
}

/// Warning bits. Bit 1 is always "budget exhausted"; bit 2 is algorithm
/// specific (iteration cap for funappx/integral, cone violation for the QMC
/// cubatures).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExitFlags(pub u32);

impl ExitFlags {
    pub const BUDGET: u32 = 1;
    pub const MAXITER: u32 = 2;
    pub const CONE: u32 = 2;

    pub fn is_clean(self) -> bool {
        self.0 == 0
    }

    pub fn has(self, bit: u32) -> bool {
        self.0 & bit != 0
    }

    pub fn set(&mut self, bit: u32) {
        self.0 |= bit;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub algorithm: Algorithm,
    pub n_evals: u64,
    pub n_points: u64,
    pub iterations: u64,
    /// Serialized as `null` when infinite.
    #[serde(with = "infinite_as_null")]
    pub errest: f64,
    pub exit_flags: ExitFlags,
    /// Left out of JSON when zero, so reports can be made reproducible.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub elapsed_seconds: f64,
    pub extra: BTreeMap<String, Value>,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl SolverDiagnostics {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverDiagnostics {
            algorithm,
            n_evals: 0,
            n_points: 0,
            iterations: 0,
            errest: 0.0,
            exit_flags: ExitFlags::default(),
            elapsed_seconds: 0.0,
            extra: BTreeMap::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.extra.insert(key.to_string(), value.into());
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.extra.get(key).and_then(Value::as_f64)
    }

    pub(crate) fn stop_clock(&mut self, start: Instant) {
        self.elapsed_seconds = start.elapsed().as_secs_f64();
    }
}

/// Cost limits shared by all solvers. Each solver reads the fields it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of function values.
    pub nmax: u64,
    pub maxiter: u64,
    pub tbudget_seconds: f64,
    /// Monte Carlo sample budget.
    pub nbudget: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nmax: 10_000_000,
            maxiter: 1000,
            tbudget_seconds: 100.0,
            nbudget: 1_000_000_000,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.nmax == 0 || self.maxiter == 0 || self.nbudget == 0 || !(self.tbudget_seconds > 0.0)
        {
            return config("budget entries must be positive");
        }
        Ok(())
    }
}
