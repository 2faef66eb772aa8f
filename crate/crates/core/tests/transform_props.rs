use gailrs::qmc::{fft, fwht_inplace, ifft, periodize, Complex64, Periodizer};
use proptest::prelude::*;

fn vec_pow2() -> impl Strategy<Value = Vec<f64>> {
    (0u32..10).prop_flat_map(|k| prop::collection::vec(-10.0..10.0f64, 1usize << k))
}

/// Composite 5-point Gauss-Legendre rule on `[0,1]` with 256 panels.
fn gauss(f: impl Fn(f64) -> f64) -> f64 {
    const X: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.236_926_885_056_189_1,
        0.478_628_670_499_366_5,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    let panels = 256;
    let h = 1.0 / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in X.iter().zip(W) {
            s += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * s
}

proptest! {
    #[test]
    fn fwht_is_linear(x in vec_pow2(), c in -3.0..3.0f64, seed in any::<u64>()) {
        let y: Vec<f64> = x.iter().enumerate().map(|(i, v)| v.sin() + (seed.wrapping_add(i as u64) % 7) as f64).collect();
        let mut lhs: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + c * b).collect();
        fwht_inplace(&mut lhs).unwrap();
        let (mut tx, mut ty) = (x.clone(), y.clone());
        fwht_inplace(&mut tx).unwrap();
        fwht_inplace(&mut ty).unwrap();
        for i in 0..x.len() {
            prop_assert!((lhs[i] - (tx[i] + c * ty[i])).abs() <= 1e-9 * (1.0 + lhs[i].abs()));
        }
    }

    #[test]
    fn fwht_twice_scales_by_length(x in vec_pow2()) {
        let mut v = x.clone();
        fwht_inplace(&mut v).unwrap();
        fwht_inplace(&mut v).unwrap();
        let n = x.len() as f64;
        for (a, b) in v.iter().zip(&x) {
            prop_assert!((a / n - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn fft_parseval_and_inverse(re in vec_pow2(), shift in -1.0..1.0f64) {
        let x: Vec<Complex64> = re.iter().map(|&r| Complex64::new(r, r * shift - 0.5)).collect();
        let big = fft(&x).unwrap();
        let e_time: f64 = x.iter().map(|c| c.norm_sqr()).sum();
        let e_freq: f64 = big.iter().map(|c| c.norm_sqr()).sum::<f64>() / x.len() as f64;
        prop_assert!((e_time - e_freq).abs() <= 1e-12 * e_time.max(1.0));
        let back = ifft(&big).unwrap();
        for (a, b) in back.iter().zip(&x) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn periodizers_preserve_polynomial_integrals(coef in prop::collection::vec(-5.0..5.0f64, 1..7)) {
        let poly = |t: f64| coef.iter().rev().fold(0.0, |acc, c| acc * t + c);
        let exact: f64 = coef.iter().enumerate().map(|(k, c)| c / (k + 1) as f64).sum();
        for v in Periodizer::ALL {
            let g = periodize(|x: &[f64]| poly(x[0]), v);
            let q = gauss(|u| g(&[u]));
            prop_assert!((q - exact).abs() <= 1e-9, "{}: {q} vs {exact}", v.name());
        }
    }
}

#[test]
fn non_power_of_two_lengths_are_rejected() {
    assert!(fwht_inplace(&mut [1.0, 2.0, 3.0]).is_err());
    assert!(fft(&[Complex64::new(0.0, 0.0); 6]).is_err());
    assert!(ifft(&[]).is_err());
}
