use gailrs::montecarlo::{cub_mc, mean_mc, McParams, McTrace};
use gailrs::{ExitFlags, Hyperbox, Measure, RngStream};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sample_budget_is_respected(nbudget in 30_000u64..400_000, seed in any::<u64>(), scale in 0.5..5.0f64) {
        let y = move |r: &mut RngStream, n: usize| r.normals(n).iter().map(|z| scale * z).collect();
        let mut p = McParams::default().with_tol(1e-5, 0.0);
        p.budget.nbudget = nbudget;
        let (_, d) = mean_mc(&y, &p, &mut RngStream::new(seed, 0)).unwrap();
        prop_assert!(d.n_evals <= nbudget);
        prop_assert!(d.exit_flags.has(ExitFlags::BUDGET));
    }

    #[test]
    fn clean_exit_certifies_the_tolerance(seed in any::<u64>(), abstol in 2e-3..5e-2f64, reltol in 0.0..0.1f64, shift in -2.0..2.0f64) {
        let y = move |r: &mut RngStream, n: usize| r.uniforms(n).iter().map(|u| shift + (3.0 * u).exp()).collect();
        let p = McParams::default().with_tol(abstol, reltol);
        let (mu, d) = mean_mc(&y, &p, &mut RngStream::new(seed, 0)).unwrap();
        prop_assert!(d.exit_flags.is_clean());
        let t = McTrace::from_diagnostics(&d).unwrap();
        let last = *t.tol.last().unwrap();
        prop_assert_eq!(last, d.errest);
        prop_assert!(last <= p.tol.tolfun(mu.abs()));
        prop_assert_eq!(t.ntot, d.n_evals);
        prop_assert_eq!(t.ntot, p.n_sig + t.n.iter().sum::<u64>());
    }

    #[test]
    fn constant_integrand_gives_the_volume(lo in prop::collection::vec(-3.0..0.0f64, 1..5), len in prop::collection::vec(0.1..2.0f64, 5), seed in any::<u64>()) {
        let hi: Vec<f64> = lo.iter().zip(&len).map(|(l, w)| l + w).collect();
        let vol: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
        let f = |x: &[f64]| vec![1.0; x.len() / lo.len()];
        let p = McParams::default().with_tol(1e-3, 0.0);
        let (q, d) = cub_mc(&f, &Hyperbox::uniform(lo.clone(), hi), &p, &RngStream::new(seed, 0)).unwrap();
        prop_assert!(d.exit_flags.is_clean());
        prop_assert!((q - vol).abs() <= 1e-12 * vol);
    }
}

#[test]
fn normal_measure_constant() {
    let f = |x: &[f64]| vec![2.5; x.len() / 3];
    let b = Hyperbox::new(vec![f64::NEG_INFINITY; 3], vec![f64::INFINITY; 3], Measure::Normal);
    let (q, _) = cub_mc(&f, &b, &McParams::default(), &RngStream::new(4, 0)).unwrap();
    assert_eq!(q, 2.5);
}
