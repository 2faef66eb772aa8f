use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// Piecewise linear interpolant through `(knots[i], values[i])`, extended
/// linearly beyond both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearApprox {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinearApprox {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 || knots.len() != values.len() {
            return config("need at least two knots and one value per knot");
        }
        if knots.windows(2).any(|w| !(w[0] < w[1])) {
            return config("knots must be strictly increasing");
        }
        Ok(PiecewiseLinearApprox { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = &self.knots;
        let i = k.partition_point(|&t| t <= x);
        if i > 0 && k[i - 1] == x {
            return self.values[i - 1];
        }
        let i = i.clamp(1, k.len() - 1) - 1;
        let (x0, x1) = (k[i], k[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }
}

pub fn eval_approx(approx: &PiecewiseLinearApprox, xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| approx.eval(x)).collect()
}
