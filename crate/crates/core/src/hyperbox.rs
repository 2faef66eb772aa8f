//! Integration domains for the multivariate solvers.

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Uniform,
    Normal,
}

/// Axis-aligned box with a measure tag. Under [`Measure::Normal`] the box
/// must be all of `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperbox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub measure: Measure,
}

fn hyperbox_error(code: u8) -> Error {
    let message = match code {
        10 => "hyperbox does not contain numbers",
        11 => "hyperbox is not 2 x d",
        12 => "hyperbox is only a point in one direction",
        13 => "hyperbox is infinite when measure is 'uniform'",
        _ => "hyperbox is not doubly infinite when measure is 'normal'",
    };
    Error::Hyperbox { code, message }
}

impl Hyperbox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, measure: Measure) -> Self {
        Hyperbox {
            lower,
            upper,
            measure,
        }
    }

    pub fn uniform(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self::new(lower, upper, Measure::Uniform)
    }

    pub fn unit(d: usize) -> Self {
        Self::uniform(vec![0.0; d], vec![1.0; d])
    }

    pub fn normal(d: usize) -> Self {
        Self::new(vec![f64::NEG_INFINITY; d], vec![f64::INFINITY; d], Measure::Normal)
    }

    /// Builds a box from a `2 x d` array of rows, lower row first.
    pub fn from_rows(rows: &[Vec<f64>], measure: Measure) -> Result<Self> {
        if rows.len() != 2 || rows[0].len() != rows[1].len() || rows[0].is_empty() {
            return Err(hyperbox_error(11));
        }
        let b = Self::new(rows[0].clone(), rows[1].clone(), measure);
        b.validate()?;
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Checks the box against its measure. Errors carry exit codes 10 to 14.
    pub fn validate(&self) -> Result<()> {
        let all = || self.lower.iter().chain(&self.upper);
        if all().any(|v| v.is_nan()) {
            return Err(hyperbox_error(10));
        }
        if self.lower.len() != self.upper.len() || self.lower.is_empty() {
            return Err(hyperbox_error(11));
        }
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l == u) {
            return Err(hyperbox_error(12));
        }
        match self.measure {
            Measure::Uniform => {
                if all().any(|v| v.is_infinite()) {
                    return Err(hyperbox_error(13));
                }
                if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
                    return config("hyperbox lower bounds must lie below upper bounds");
                }
            }
            Measure::Normal => {
                let doubly = self.lower.iter().all(|&l| l == f64::NEG_INFINITY)
                    && self.upper.iter().all(|&u| u == f64::INFINITY);
                if !doubly {
                    return Err(hyperbox_error(14));
                }
            }
        }
        Ok(())
    }

    /// Product of side lengths for a uniform box, 1 under the normal measure.
    pub fn volume(&self) -> f64 {
        match self.measure {
            Measure::Uniform => self
                .lower
                .iter()
                .zip(&self.upper)
                .map(|(l, u)| u - l)
                .product(),
            Measure::Normal => 1.0,
        }
    }
}

/// Exit code carried by a hyperbox error, if any.
pub fn exit_code(e: &Error) -> Option<u8> {
    match e {
        Error::Hyperbox { code, .. } => Some(*code),
        _ => None,
    }
}
