//! Fast Walsh-Hadamard and Fourier transforms on power-of-two lengths.

use rustfft::FftPlanner;

pub use rustfft::num_complex::Complex64;

use crate::error::{config, Result};

fn check_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return config(format!("transform length must be a power of two, got {n}"));
    }
    Ok(())
}

/// Unnormalized in-place Walsh-Hadamard transform in natural (Hadamard)
/// order. Applying it twice multiplies by the length.
pub fn fwht_inplace(v: &mut [f64]) -> Result<()> {
    check_len(v.len())?;
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Unnormalized DFT, `X_k = sum_j x_j exp(-2 pi i j k / n)`.
pub fn fft(values: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(values.len())?;
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    Ok(buf)
}

/// Inverse of [`fft`], including the `1/n` factor.
pub fn ifft(values: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(values.len())?;
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    let s = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|c| *c *= s);
    Ok(buf)
}
