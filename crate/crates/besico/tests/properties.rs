//! Property tests: identity suite on random arrangements, tail
//! round-trips, and the randomized exact-geometry check of the
//! f-vector formulas.

use besico::arrangement::MinimalArrangement;
use besico::field::make_field;
use besico::identities;
use besico::real_bridge::{f1_direct, f_vector, real_quantities, RationalLine, RealArrangement};
use proptest::prelude::*;

proptest! {
    /// Every arrangement over every small field satisfies the full
    /// equality and inequality suite.
    #[test]
    fn random_arrangements_satisfy_identities(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13]),
        raw in prop::collection::vec(0u64..u64::MAX, 14),
    ) {
        let spec = make_field(q).unwrap();
        let indices: Vec<u64> = raw.iter().take(q as usize + 1).map(|v| v % q).collect();
        let arr = MinimalArrangement::from_indices(&spec, &indices).unwrap();
        let report = identities::full_report(&arr.spectrum());
        prop_assert!(report.all_equalities_pass);
        prop_assert!(report.bounds.all_pass);
        prop_assert!(report.ze.all_pass());
    }

    /// derived_x1_x2 reproduces the actual x_1, x_2 of any genuine
    /// arrangement's spectrum tail.
    #[test]
    fn tail_round_trip(
        q in prop::sample::select(vec![3u64, 4, 5, 7, 8]),
        raw in prop::collection::vec(0u64..u64::MAX, 9),
    ) {
        let spec = make_field(q).unwrap();
        let indices: Vec<u64> = raw.iter().take(q as usize + 1).map(|v| v % q).collect();
        let sp = MinimalArrangement::from_indices(&spec, &indices).unwrap().spectrum();
        let (x1, x2) = identities::derived_x1_x2(&sp.counts[3..], q).unwrap();
        prop_assert_eq!(x1, sp.counts[1] as i128);
        prop_assert_eq!(x2, sp.counts[2] as i128);
    }

    /// Sampled arrangements are deterministic in (seed, index).
    #[test]
    fn sampling_deterministic(seed in any::<u64>(), index in 0u64..1000) {
        let spec = make_field(7).unwrap();
        let a = besico::sampling::sample(&spec, seed, index);
        let b = besico::sampling::sample(&spec, seed, index);
        prop_assert_eq!(a.to_indices(), b.to_indices());
    }
}

/// Builds a small rational arrangement from generator data, mixing
/// generic lines with deliberate degeneracies (repeated slopes and
/// concurrences through the origin).
fn build_arrangement(specs: &[(i8, i8, i8)]) -> Option<RealArrangement> {
    let mut lines = Vec::new();
    for &(a, b, c) in specs {
        if a == 0 && b == 0 {
            continue;
        }
        lines.push(RationalLine::new(
            num_rational::BigRational::from_integer((a as i64).into()),
            num_rational::BigRational::from_integer((b as i64).into()),
            num_rational::BigRational::from_integer((c as i64).into()),
        ).unwrap());
    }
    RealArrangement::new(lines).ok().filter(|a| a.len() >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// For randomized rational arrangements (generic and degenerate):
    /// the direct per-line edge count equals p1 + p01, and the Euler
    /// relation holds with f2 from the formula path — both exact.
    #[test]
    fn f_vector_formulas_vs_geometry(
        specs in prop::collection::vec((-4i8..5, -4i8..5, -6i8..7), 2..12),
    ) {
        if let Some(arr) = build_arrangement(&specs) {
            let q = real_quantities(&arr).unwrap();
            prop_assert_eq!(f1_direct(&arr), q.p1 + q.p01);
            if let Ok(fv) = f_vector(&q) {
                prop_assert_eq!((fv.f0 as i128 + 1) - fv.f1 as i128 + fv.f2 as i128, 2);
                prop_assert_eq!(fv.f1, fv.f1b + 2 * q.p1);
                prop_assert_eq!(fv.f2, fv.f2b + 2 * q.p1);
                // p0 = sum of x_i, p01 = sum of i x_i
                let x_sum: u64 = q.spectrum.values().sum();
                let ix_sum: u64 = q.spectrum.iter().map(|(&i, &x)| i * x).sum();
                prop_assert_eq!(q.p0, x_sum);
                prop_assert_eq!(q.p01, ix_sum);
            }
        }
    }
}
