//! Standard normal distribution function and its inverse.

use std::f64::consts::{PI, SQRT_2};

pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

const A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];

/// Inverse of [`norm_cdf`]. Acklam's rational approximation followed by one
/// Halley step. `p = 0` is clamped to the smallest positive double and
/// `p = 1` to the largest double below one.
pub fn norm_inv(p: f64) -> f64 {
    if p.is_nan() {
        return f64::NAN;
    }
    let p = p.clamp(f64::from_bits(1), 1.0 - f64::EPSILON / 2.0);
    let plow = 0.02425;
    let x = if p < plow {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - plow {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    // Halley refinement; measure the error on the tail closer to zero
    let e = if x <= 0.0 {
        norm_cdf(x) - p
    } else {
        (1.0 - p) - norm_cdf(-x)
    };
    let u = e * (2.0 * PI).sqrt() * (x * x / 2.0).exp();
    let refined = x - u / (1.0 + x * u / 2.0);
    if refined.is_finite() {
        refined
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_is_zero() {
        assert_eq!(norm_inv(0.5), 0.0);
    }

    #[test]
    fn round_trip() {
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            let x = norm_inv(p);
            assert!((norm_cdf(x) - p).abs() < 1e-15, "{p}");
        }
        for p in [1e-300, 1e-100, 1e-20, 1e-8, 1e-3] {
            let x = norm_inv(p);
            assert!(((norm_cdf(x) - p) / p).abs() < 1e-12, "{p}");
        }
    }

    #[test]
    fn known_quantiles() {
        assert!((norm_inv(0.975) - 1.959963984540054).abs() < 1e-14);
        assert!((norm_inv(0.0) + 38.46740).abs() < 1e-3);
        assert!(norm_inv(1.0).is_finite());
    }
}
