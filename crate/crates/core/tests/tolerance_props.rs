use gailrs::{ToleranceSpec, TolType};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = ToleranceSpec> {
    (0.0..1.0f64, 0.0..1.0f64, prop::bool::ANY, 0.0..=1.0f64).prop_map(|(a, r, comb, theta)| {
        if comb {
            ToleranceSpec::comb(a, r, theta)
        } else {
            ToleranceSpec::new(a, r)
        }
    })
}

proptest! {
    #[test]
    fn monotone_in_mu(s in spec(), mu in 0.0..1e3f64, dmu in 0.0..1e3f64) {
        prop_assert!(s.tolfun(mu) <= s.tolfun(mu + dmu));
    }

    #[test]
    fn monotone_in_tolerances(s in spec(), mu in 0.0..1e3f64, da in 0.0..1.0f64, dr in 0.0..1.0f64) {
        let bigger = ToleranceSpec { abstol: s.abstol + da, reltol: s.reltol + dr, ..s };
        prop_assert!(s.tolfun(mu) <= bigger.tolfun(mu));
    }

    #[test]
    fn max_rule_bounds(a in 0.0..1.0f64, r in 0.0..1.0f64, mu in 0.0..1e3f64) {
        let t = ToleranceSpec::new(a, r).tolfun(mu);
        prop_assert!(t >= a.min(r * mu));
        prop_assert!(t >= a && t >= r * mu);
    }

    #[test]
    fn comb_rule_between_pure_rules(a in 0.0..1.0f64, r in 0.0..1.0f64, mu in 0.0..1e3f64, theta in 0.0..=1.0f64) {
        let s = ToleranceSpec::comb(a, r, theta);
        prop_assert_eq!(s.toltype, TolType::Comb);
        let t = s.tolfun(mu);
        let (lo, hi) = (a.min(r * mu), a.max(r * mu));
        prop_assert!(t >= lo * (1.0 - 1e-15) && t <= hi * (1.0 + 1e-15));
    }

    /// Any truth within the certified half-width of an estimate is itself
    /// within tolfun of that half-width.
    #[test]
    fn certified_target_is_safe(s in spec(), m in 0.0..1e3f64, frac in -1.0..=1.0f64) {
        let eps = s.certified_target(m);
        prop_assert!(eps >= 0.0);
        let truth = (m + frac * eps).max(0.0);
        prop_assert!(eps <= s.tolfun(truth) * (1.0 + 1e-12) + 1e-300);
    }
}
