//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use besico::arrangement::MinimalArrangement;
use besico::constructions::{concurrent, extremal_x0, parabola};
use besico::field::make_field;
use besico::identities;
use besico::probability::{
    expected_xm, joint_point_law, law_moments, rational_to_f64, single_point_law, Functional,
};
use besico::real_bridge::{self, fixtures};
use besico::sampling::{enumerate, monte_carlo, sample};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::time::Instant;

fn report(n: u32, what: &str, pass: bool) {
    println!("criterion {n} [{}] {what}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {what}");
}

/// 1. Exhaustive identity verification at q in {2,3,4,5}: the three
///    moment equalities, the incidence formula, and the derived x1/x2
///    hold exactly for every arrangement; runtime under 60 s.
#[test]
fn criterion_1_exhaustive_identities() {
    let start = Instant::now();
    let mut checked = 0u64;
    for q in [2u64, 3, 4, 5] {
        let spec = make_field(q).unwrap();
        for arr in enumerate(&spec, None).unwrap() {
            let r = identities::full_report(&arr.spectrum());
            assert!(r.all_equalities_pass, "q = {q}, B = {:?}", arr.to_indices());
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        &format!("{checked} arrangements, zero identity failures, {elapsed:.2?}"),
        checked == 8 + 81 + 1024 + 15625 && elapsed.as_secs() < 60,
    );
}

/// 2. Laws equal exact enumeration frequencies at q in {2,3,4} for all
///    m and all (i,j), for at least 3 distinct point pairs each.
#[test]
fn criterion_2_law_oracle_equivalence() {
    let mut comparisons = 0u64;
    for q in [2u64, 3, 4] {
        let spec = make_field(q).unwrap();
        let pairs: [((u64, u64), (u64, u64)); 3] =
            [((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 1), (0, 1))];
        let side = (q + 2) as usize;
        let mut joint = vec![vec![0u64; side * side]; pairs.len()];
        let mut single = vec![vec![0u64; side]; 2];
        let mut total = 0u64;
        for arr in enumerate(&spec, None).unwrap() {
            total += 1;
            let mult = |x: u64, y: u64| {
                let f = &spec;
                arr.multiplicity(besico::Point {
                    x: f.element(x).unwrap(),
                    y: f.element(y).unwrap(),
                })
                .unwrap() as usize
            };
            single[0][mult(0, 0)] += 1;
            single[1][mult(1, 1)] += 1;
            for (k, &(p, r)) in pairs.iter().enumerate() {
                joint[k][mult(p.0, p.1) * side + mult(r.0, r.1)] += 1;
            }
        }
        let freq = |c: u64| BigRational::new(BigInt::from(c), BigInt::from(total));
        for counts in &single {
            for (m, &c) in counts.iter().enumerate() {
                assert_eq!(freq(c), single_point_law(q, m as i64).unwrap());
                comparisons += 1;
            }
        }
        for counts in &joint {
            for i in 0..side {
                for j in 0..side {
                    assert_eq!(
                        freq(counts[i * side + j]),
                        joint_point_law(q, i as i64, j as i64).unwrap(),
                        "q = {q}, (i, j) = ({i}, {j})"
                    );
                    comparisons += 1;
                }
            }
        }
    }
    report(2, &format!("{comparisons} exact law/oracle equalities"), true);
}

/// 3. Variance cancellation and expectations for every prime power
///    q in {2,...,16}.
#[test]
fn criterion_3_variance_cancellation() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let cases = [
            (Functional::Total, BigRational::from_integer(1.into())),
            (
                Functional::MeanMultiplicity,
                BigRational::new((q as i64 + 1).into(), (q as i64).into()),
            ),
            (
                Functional::SecondMoment,
                BigRational::new((2 * (q as i64 + 1)).into(), (q as i64).into()),
            ),
        ];
        for (functional, expected_mean) in cases {
            let lm = law_moments(q, functional);
            assert_eq!(lm.mean, expected_mean, "mean at q = {q}");
            assert!(lm.variance.is_zero(), "variance at q = {q}: {}", lm.variance);
        }
    }
    report(3, "Var(S) = Var(M̄) = Var(V) = 0 and E = 1, 1+1/q, 2+2/q for q = 2..16", true);
}

/// 4. Extremal values: exhaustive maxima of x_0 and x_1 at q in
///    {2,3,4,5}; the parabola attains the x_0 maximum at every supported
///    prime power q <= 32.
#[test]
fn criterion_4_extremal_values() {
    for q in [2u64, 3, 4, 5] {
        let spec = make_field(q).unwrap();
        let mut max_x0 = 0;
        let mut max_x1 = 0;
        for arr in enumerate(&spec, None).unwrap() {
            let sp = arr.spectrum();
            max_x0 = max_x0.max(sp.counts[0]);
            max_x1 = max_x1.max(sp.counts[1]);
        }
        assert_eq!(max_x0, extremal_x0(q).unwrap(), "max x_0 at q = {q}");
        assert_eq!(max_x1, q * q - 1, "max x_1 at q = {q}");
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32] {
        let spec = make_field(q).unwrap();
        let (arr, _) = parabola(&spec);
        assert_eq!(arr.spectrum().counts[0], extremal_x0(q).unwrap(), "parabola x_0 at q = {q}");
    }
    report(4, "exhaustive maxima match, parabola attains x_0 max up to q = 32", true);
}

/// 5. Construction fixtures equal the closed forms for q in
///    {2,3,4,5,7,8,9,11,13,16}.
#[test]
fn criterion_5_construction_fixtures() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let spec = make_field(q).unwrap();
        for (name, (arr, predicted)) in
            [("concurrent", concurrent(&spec)), ("parabola", parabola(&spec))]
        {
            assert_eq!(arr.spectrum(), predicted, "{name} at q = {q}");
        }
    }
    report(5, "concurrent and parabola spectra equal closed forms, GF(4)/GF(8)/GF(9)/GF(16) included", true);
}

/// 6. Monte Carlo expectation: q = 101, N = 2000, fixed seed; per-m
///    sample mean within 5% of the exact expectation and concentration
///    fraction >= 0.95 for m in 0..=4; runtime under 10 minutes.
#[test]
fn criterion_6_monte_carlo_expectation() {
    let start = Instant::now();
    let spec = make_field(101).unwrap();
    let (stats, _) = monte_carlo(&spec, 2000, 7, 4, false);
    assert_eq!(stats.identity_failures, 0);
    for ms in &stats.per_m {
        let expected = ms.expected_f64;
        let rel = (ms.mean_f64 - expected).abs() / expected;
        assert!(rel < 0.05, "m = {}: mean {} vs expected {expected}", ms.m, ms.mean_f64);
        assert!(ms.concentration >= 0.95, "m = {}: c = {}", ms.m, ms.concentration);
    }
    let elapsed = start.elapsed();
    report(
        6,
        &format!("q=101 N=2000 means within 5%, concentration >= 0.95, {elapsed:.2?}"),
        elapsed.as_secs() < 600,
    );
}

/// 7. Bridge: the q = 5 worked example cross-validates, and the Euler
///    value is 2 for every enumerated arrangement at q in {2,3,4,5}.
#[test]
fn criterion_7_bridge() {
    let spec = make_field(5).unwrap();
    let arr =
        MinimalArrangement::from_indices(&spec, &fixtures::Q5_EXAMPLE_INTERCEPTS).unwrap();
    let sp = arr.spectrum();
    let r = real_bridge::cross_validate(&sp, &fixtures::q5_example_realization()).unwrap();
    assert!(r.all_match, "q = 5 worked example: {r:?}");

    for q in [2u64, 3, 4, 5] {
        let spec = make_field(q).unwrap();
        for arr in enumerate(&spec, None).unwrap() {
            let p = real_bridge::predict_from_field(&arr.spectrum()).unwrap();
            assert_eq!(p.euler_value, 2, "q = {q}, B = {:?}", arr.to_indices());
        }
    }
    report(7, "q=5 example cross-validates; Euler value 2 for all enumerated arrangements", true);
}

/// 8. Inequality suite: the three inequalities hold for every enumerated
///    and sampled spectrum; all three are sharp for the parabola at even
///    q in {4, 8, 16}.
#[test]
fn criterion_8_inequalities() {
    for q in [2u64, 3, 4, 5] {
        let spec = make_field(q).unwrap();
        for arr in enumerate(&spec, None).unwrap() {
            assert!(identities::check_ze(&arr.spectrum()).all_pass());
        }
    }
    let spec = make_field(101).unwrap();
    for index in 0..500 {
        let sp = sample(&spec, 13, index).spectrum();
        assert!(identities::check_ze(&sp).all_pass());
        assert!(identities::check_bounds(&sp).all_pass);
    }
    for q in [4u64, 8, 16] {
        let spec = make_field(q).unwrap();
        let (arr, _) = parabola(&spec);
        let ze = identities::check_ze(&arr.spectrum());
        assert!(ze.all_sharp(), "parabola at q = {q} not sharp: {ze:?}");
    }
    report(8, "inequalities hold everywhere; parabola sharp at q = 4, 8, 16", true);
}

/// 9. Determinism: identical SampleStats JSON across two runs and
///    across worker counts 1 vs 8 for the same seed.
#[test]
fn criterion_9_determinism() {
    let spec = make_field(101).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let (stats, _) = pool.install(|| monte_carlo(&spec, 200, 42, 4, false));
        serde_json::to_string(&stats).unwrap()
    };
    let first = run(1);
    let second = run(1);
    let wide = run(8);
    assert_eq!(first, second, "two identical runs differ");
    assert_eq!(first, wide, "1-worker and 8-worker runs differ");
    report(9, "SampleStats JSON identical across runs and worker counts 1 vs 8", true);
}

/// Enumerated means also match the exact expectation (exercises the
/// asymptotic display path for sanity, not a numbered criterion).
#[test]
fn enumerated_mean_consistency() {
    let spec = make_field(3).unwrap();
    let stats = besico::sampling::enumerate_stats(&spec, None).unwrap();
    for m in 0..=4u64 {
        assert_eq!(stats.mean_xm[m as usize], expected_xm(3, m as i64).unwrap());
        let _ = rational_to_f64(&stats.mean_xm[m as usize]);
    }
}
