use std::collections::HashSet;

use gailrs::qmc::{LatticeGenerator, SobolGenerator};
use gailrs::RngStream;
use proptest::prelude::*;

fn sobol(d: usize, seed: u64, kind: u8) -> SobolGenerator {
    let mut rng = RngStream::new(seed, 0);
    match kind {
        0 => SobolGenerator::new(d).unwrap(),
        1 => SobolGenerator::shifted(d, &mut rng).unwrap(),
        _ => SobolGenerator::shifted(d, &mut rng).unwrap().linear_scramble(&mut rng),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every one-dimensional projection of the first `2^m` points puts one
    /// point in each interval `[k/2^m, (k+1)/2^m)`.
    #[test]
    fn sobol_projections_are_stratified(d in 1usize..=10, m in 0u32..12, seed in any::<u64>(), kind in 0u8..3) {
        let pts = sobol(d, seed, kind).first(m).unwrap();
        let n = 1usize << m;
        for j in 0..d {
            let mut seen = vec![false; n];
            for row in pts.rows() {
                let k = (row[j] * n as f64) as usize;
                prop_assert!(!seen[k], "coordinate {j} cell {k} hit twice");
                seen[k] = true;
            }
        }
    }

    /// In two dimensions the first `2^m` points form a (0,m,2)-net: every
    /// box `[a/2^k1, (a+1)/2^k1) x [b/2^k2, (b+1)/2^k2)` with `k1+k2 = m`
    /// holds exactly one point.
    #[test]
    fn sobol_two_dim_net(m in 0u32..11, seed in any::<u64>(), kind in 0u8..3) {
        let pts = sobol(2, seed, kind).first(m).unwrap();
        for k1 in 0..=m {
            let k2 = m - k1;
            let mut seen = HashSet::new();
            for row in pts.rows() {
                let a = (row[0] * (1u64 << k1) as f64) as u64;
                let b = (row[1] * (1u64 << k2) as f64) as u64;
                prop_assert!(seen.insert((a, b)), "box ({a},{b}) at k1={k1} hit twice");
            }
        }
    }

    /// Unshifted lattice points are closed under addition mod 1.
    #[test]
    fn lattice_is_a_group(d in 1usize..=20, m in 1u32..12, picks in prop::collection::vec((any::<u32>(), any::<u32>()), 20)) {
        let pts = LatticeGenerator::new(d).unwrap().first(m).unwrap();
        let n = 1u64 << m;
        let key = |row: &[f64]| -> Vec<u64> {
            row.iter().map(|&x| {
                let v = x * n as f64;
                assert_eq!(v, v.round(), "lattice point off the 2^-m grid");
                v as u64
            }).collect()
        };
        let set: HashSet<Vec<u64>> = pts.rows().map(key).collect();
        prop_assert_eq!(set.len() as u64, n);
        prop_assert!(set.contains(&vec![0; d]));
        for (i, j) in picks {
            let (a, b) = (key(pts.row(i as usize % n as usize)), key(pts.row(j as usize % n as usize)));
            let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % n).collect();
            prop_assert!(set.contains(&sum));
        }
    }

    #[test]
    fn shifted_points_stay_in_the_cube(d in 1usize..=30, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 1);
        let l = LatticeGenerator::shifted(d, &mut rng).unwrap().first(8).unwrap();
        let s = SobolGenerator::shifted(d, &mut rng).unwrap().linear_scramble(&mut rng).first(8).unwrap();
        prop_assert!(l.data.iter().chain(&s.data).all(|x| (0.0..1.0).contains(x)));
    }
}
