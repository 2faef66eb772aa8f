use std::sync::atomic::{AtomicUsize, Ordering};

use gailrs::qmc::{cub_lattice, cub_sobol, Periodizer, QmcParams, QmcResult};
use gailrs::{Hyperbox, RngStream};

// mpmath values at 30 digits
const CALL: f64 = 2.056341537608203;
const ERF_SQ: f64 = 2.653333204732652;

type G = fn(&[f64]) -> f64;

struct Case {
    d: usize,
    g: G,
    b: Hyperbox,
    abstol: f64,
    reltol: f64,
    t: Periodizer,
    truth: f64,
}

fn rows(d: usize, g: G) -> impl Fn(&[f64]) -> Vec<f64> + Sync {
    move |x: &[f64]| x.chunks(d).map(g).collect()
}

fn cases() -> Vec<Case> {
    vec![
        Case { d: 2, g: |x| x[0] * x[1], b: Hyperbox::unit(2), abstol: 1e-5, reltol: 0.0, t: Periodizer::C1sin, truth: 0.25 },
        Case { d: 3, g: |x| x.iter().map(|t| t * t).product(), b: Hyperbox::normal(3), abstol: 1e-3, reltol: 1e-3, t: Periodizer::C1sin, truth: 1.0 },
        Case {
            d: 2,
            g: |x| (-x[0] * x[0] - x[1] * x[1]).exp(),
            b: Hyperbox::uniform(vec![-1.0; 2], vec![2.0; 2]),
            abstol: 1e-3,
            reltol: 1e-2,
            t: Periodizer::C1,
            truth: ERF_SQ,
        },
        Case {
            d: 1,
            g: |x| (-0.05f64 * 0.05 / 2.0).exp() * (100.0 * (0.05 * x[0]).exp() - 100.0).max(0.0),
            b: Hyperbox::normal(1),
            abstol: 1e-4,
            reltol: 1e-2,
            t: Periodizer::C1sin,
            truth: CALL,
        },
        Case { d: 5, g: |x| 8.0 * x.iter().product::<f64>(), b: Hyperbox::unit(5), abstol: 1e-5, reltol: 0.0, t: Periodizer::Baker, truth: 0.25 },
        Case {
            d: 1,
            g: |x| 3.0 / (5.0 - 4.0 * (2.0 * std::f64::consts::PI * x[0]).cos()),
            b: Hyperbox::unit(1),
            abstol: 1e-5,
            reltol: 0.0,
            t: Periodizer::Id,
            truth: 1.0,
        },
    ]
}

fn params(c: &Case) -> QmcParams {
    QmcParams::default().with_tol(c.abstol, c.reltol).with_transform(c.t)
}

fn lattice(c: &Case, seed: u64) -> QmcResult {
    cub_lattice(&rows(c.d, c.g), &c.b, &params(c), &mut RngStream::new(seed, 0)).unwrap()
}

fn sobol(c: &Case, seed: u64) -> QmcResult {
    cub_sobol(&rows(c.d, c.g), &c.b, &params(c), &mut RngStream::new(seed, 0)).unwrap()
}

#[test]
fn lattice_meets_tolerance_over_seeds() {
    for (k, c) in cases().iter().enumerate() {
        let tol = params(c).tol.tolfun(c.truth);
        for seed in 0..10 {
            let r = lattice(c, seed);
            assert!((r.q - c.truth).abs() <= tol, "case {k} seed {seed}: {}", r.q);
            assert!(r.bound_err <= tol);
        }
    }
}

#[test]
fn sobol_meets_tolerance_over_seeds() {
    for (k, c) in cases().iter().take(5).enumerate() {
        let tol = params(c).tol.tolfun(c.truth);
        for seed in 0..10 {
            let r = sobol(c, seed);
            assert!((r.q - c.truth).abs() <= tol, "case {k} seed {seed}: {}", r.q);
        }
    }
}

#[test]
fn lattice_and_sobol_agree_within_bounds() {
    for c in cases().iter().take(5) {
        let (a, b) = (lattice(c, 3), sobol(c, 3));
        assert!((a.q - b.q).abs() <= a.bound_err + b.bound_err, "{} {}", a.q, b.q);
    }
}

#[test]
fn every_evaluation_is_reused() {
    let counter = AtomicUsize::new(0);
    let g = |x: &[f64]| {
        counter.fetch_add(x.len() / 2, Ordering::Relaxed);
        x.chunks(2).map(|p| (p[0] * 3.0).sin() * p[1].exp()).collect::<Vec<_>>()
    };
    let p = QmcParams::default().with_tol(1e-7, 0.0);
    for sobol in [false, true] {
        let mut rng = RngStream::new(1, 0);
        let r = if sobol {
            cub_sobol(&g, &Hyperbox::unit(2), &p, &mut rng).unwrap()
        } else {
            cub_lattice(&g, &Hyperbox::unit(2), &p, &mut rng).unwrap()
        };
        let used = counter.swap(0, Ordering::Relaxed);
        assert_eq!(used as u64, r.n);
        assert!(r.n.is_power_of_two());
        assert_eq!(r.diagnostics.n_evals, r.n);
    }
}

#[test]
fn same_seed_same_answer() {
    let c = &cases()[2];
    let (a, b) = (lattice(c, 9), lattice(c, 9));
    assert_eq!(a.q.to_bits(), b.q.to_bits());
    assert_eq!(a.diagnostics.extra, b.diagnostics.extra);
    let (a, b) = (sobol(c, 9), sobol(c, 9));
    assert_eq!(a.q.to_bits(), b.q.to_bits());
}
