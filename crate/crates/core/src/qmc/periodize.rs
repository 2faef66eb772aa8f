use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Change of variables on `[0,1]` that makes an integrand periodic without
/// changing its integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Periodizer {
    #[serde(rename = "id")]
    Id,
    #[serde(rename = "Baker")]
    Baker,
    #[serde(rename = "C0")]
    C0,
    #[serde(rename = "C1")]
    C1,
    #[serde(rename = "C1sin")]
    C1sin,
}

impl Periodizer {
    pub const ALL: [Periodizer; 5] = [
        Periodizer::Id,
        Periodizer::Baker,
        Periodizer::C0,
        Periodizer::C1,
        Periodizer::C1sin,
    ];

    /// Mapped coordinate and Jacobian weight at `u`.
    pub fn map(self, u: f64) -> (f64, f64) {
        match self {
            Periodizer::Id => (u, 1.0),
            Periodizer::Baker => (1.0 - (2.0 * u - 1.0).abs(), 1.0),
            Periodizer::C0 => (u * u * (3.0 - 2.0 * u), 6.0 * u * (1.0 - u)),
            Periodizer::C1 => (
                u * u * u * (10.0 - 15.0 * u + 6.0 * u * u),
                30.0 * u * u * (1.0 - u) * (1.0 - u),
            ),
            Periodizer::C1sin => (
                u - (2.0 * PI * u).sin() / (2.0 * PI),
                1.0 - (2.0 * PI * u).cos(),
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Periodizer::Id => "id",
            Periodizer::Baker => "Baker",
            Periodizer::C0 => "C0",
            Periodizer::C1 => "C1",
            Periodizer::C1sin => "C1sin",
        }
    }

    pub fn from_name(s: &str) -> Option<Periodizer> {
        Self::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s))
    }

    /// Maps `u` in place and returns the product of the weights.
    pub fn apply(self, u: &mut [f64]) -> f64 {
        let mut w = 1.0;
        for v in u.iter_mut() {
            let (t, wt) = self.map(*v);
            *v = t;
            w *= wt;
        }
        w
    }
}

/// `g(u) = f(psi(u)) * prod psi'(u_j)`, with the same integral as `f` over
/// the unit cube.
///
/// ```
/// use gailrs::qmc::{periodize, Periodizer};
///
/// let g = periodize(|x: &[f64]| x[0], Periodizer::Baker);
/// assert_eq!(g(&[0.25]), 0.5);
/// ```
pub fn periodize<F>(f: F, variant: Periodizer) -> impl Fn(&[f64]) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    move |u: &[f64]| {
        let mut t = u.to_vec();
        let w = variant.apply(&mut t);
        f(&t) * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(Periodizer::C1sin.map(0.0).1, 0.0);
        assert!(Periodizer::C1sin.map(1.0).1.abs() < 1e-15);
        for p in Periodizer::ALL {
            let (t0, _) = p.map(0.0);
            assert!(t0.abs() < 1e-15);
        }
    }

    #[test]
    fn constant_preserved() {
        let n = 1_000_000;
        for p in Periodizer::ALL {
            let g = periodize(|_: &[f64]| 1.0, p);
            // midpoint rule
            let s: f64 = (0..n).map(|i| g(&[(i as f64 + 0.5) / n as f64])).sum::<f64>() / n as f64;
            assert!((s - 1.0).abs() < 1e-9, "{p:?} {s}");
        }
    }

    #[test]
    fn names_round_trip() {
        for p in Periodizer::ALL {
            assert_eq!(Periodizer::from_name(p.name()), Some(p));
        }
        assert_eq!(Periodizer::from_name("baker"), Some(Periodizer::Baker));
    }
}
