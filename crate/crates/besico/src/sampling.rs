//! Uniform sampling over Ω, exhaustive enumeration for small q, and
//! Monte Carlo statistics for the expectation and concentration claims.
//!
//! Sampling is counter-based: arrangement `k` of a run is fully
//! determined by `(seed, k)`, so results are identical for any worker
//! count and any execution order. Intercepts are drawn by rejection from
//! a power-of-two range, which is exactly uniform for arbitrary `q`.

use crate::arrangement::{MinimalArrangement, Spectrum};
use crate::field::FieldSpec;
use crate::identities;
use crate::probability::{expected_xm, rational_to_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Default cap on exhaustive enumeration size.
pub const DEFAULT_GUARD: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplingError {
    #[error("enumeration of q^(q+1) = {count} arrangements exceeds the guard limit {guard}")]
    TooLarge { count: u128, guard: u128 },
}

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16] = 0x42; // domain tag, keeps this stream distinct from other uses
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw from `0..q` by rejection from the next power of two.
fn uniform_mod(rng: &mut ChaCha8Rng, q: u64) -> u64 {
    let mask = q.next_power_of_two() - 1;
    loop {
        let v = rng.next_u64() & mask;
        if v < q {
            return v;
        }
    }
}

/// The arrangement at position `index` of the stream identified by
/// `seed`: `q + 1` independent uniform intercepts.
pub fn sample(spec: &FieldSpec, seed: u64, index: u64) -> MinimalArrangement {
    let q = spec.q();
    let mut rng = rng_for(seed, index);
    let indices: Vec<u64> = (0..=q).map(|_| uniform_mod(&mut rng, q)).collect();
    MinimalArrangement::from_indices(spec, &indices).expect("indices are in range")
}

/// Number of arrangements in Ω, `q^(q+1)`, if it fits in u128.
pub fn omega_size(q: u64) -> Option<u128> {
    (q as u128).checked_pow(q as u32 + 1)
}

/// All `q^(q+1)` arrangements in lexicographic intercept order (last
/// slope varies fastest).
pub fn enumerate(
    spec: &FieldSpec,
    guard: Option<u128>,
) -> Result<impl Iterator<Item = MinimalArrangement> + '_, SamplingError> {
    let q = spec.q();
    let guard = guard.unwrap_or(DEFAULT_GUARD);
    let count = omega_size(q).ok_or(SamplingError::TooLarge { count: u128::MAX, guard })?;
    if count > guard {
        return Err(SamplingError::TooLarge { count, guard });
    }
    let mut indices = vec![0u64; q as usize + 1];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let arr = MinimalArrangement::from_indices(spec, &indices).unwrap();
        // odometer increment, last position fastest
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                done = true;
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < q {
                break;
            }
            indices[pos] = 0;
        }
        Some(arr)
    }))
}

/// Per-multiplicity Monte Carlo statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MStat {
    pub m: u64,
    /// Exact sample mean of X_m as a fraction over N.
    pub mean: String,
    pub mean_f64: f64,
    /// Population variance of the sample (denominator N), exact.
    pub variance: String,
    pub variance_f64: f64,
    /// Exact expectation E(X_m) for comparison.
    pub expected: String,
    pub expected_f64: f64,
    /// Asymptotic reference value q²/(m! e).
    pub asymptotic_f64: f64,
    /// Fraction of samples with |X_m − q²/(m! e)| < q·ln q.
    pub concentration: f64,
}

/// Result of a Monte Carlo run, serializable as stable JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub schema_version: u32,
    pub q: u64,
    pub samples: u64,
    pub seed: u64,
    pub m_max: u64,
    pub per_m: Vec<MStat>,
    /// Number of sampled spectra violating the moment equalities
    /// (always 0 for genuine arrangements).
    pub identity_failures: u64,
}

struct Accum {
    sum: Vec<u128>,
    sum_sq: Vec<u128>,
    concentrated: Vec<u64>,
    identity_failures: u64,
}

impl Accum {
    fn new(m_max: u64) -> Self {
        let len = m_max as usize + 1;
        Accum {
            sum: vec![0; len],
            sum_sq: vec![0; len],
            concentrated: vec![0; len],
            identity_failures: 0,
        }
    }

    fn merge(mut self, other: Accum) -> Accum {
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
            self.concentrated[i] += other.concentrated[i];
        }
        self.identity_failures += other.identity_failures;
        self
    }
}

/// Runs `n` independent samples and aggregates exact statistics.
///
/// The reduction is a sum of integers, so the result does not depend on
/// the number of rayon workers. `keep_triples` additionally records the
/// normalized `(x_0, x_1, x_2)/q²` triple of every sample (in index
/// order) for region plotting.
pub fn monte_carlo(
    spec: &FieldSpec,
    n: u64,
    seed: u64,
    m_max: u64,
    keep_triples: bool,
) -> (SampleStats, Vec<[f64; 3]>) {
    let q = spec.q();
    let m_max = m_max.min(q + 1);
    let threshold = q as f64 * (q as f64).ln();

    let asym: Vec<f64> = (0..=m_max)
        .map(|m| {
            let mfact: f64 = (1..=m.max(1)).product::<u64>() as f64;
            (q * q) as f64 / (mfact * std::f64::consts::E)
        })
        .collect();

    let accum = (0..n)
        .into_par_iter()
        .fold(
            || Accum::new(m_max),
            |mut acc, index| {
                let arr = sample(spec, seed, index);
                let sp = arr.spectrum();
                if !identities::verify_moments(&sp).all_pass() {
                    acc.identity_failures += 1;
                }
                for (m, &x) in sp.counts.iter().take(m_max as usize + 1).enumerate() {
                    acc.sum[m] += x as u128;
                    acc.sum_sq[m] += (x as u128) * (x as u128);
                    if (x as f64 - asym[m]).abs() < threshold {
                        acc.concentrated[m] += 1;
                    }
                }
                acc
            },
        )
        .reduce(|| Accum::new(m_max), Accum::merge);

    // collected separately in index order so the dump is deterministic
    let triples = if keep_triples {
        let q2 = (q * q) as f64;
        (0..n)
            .into_par_iter()
            .map(|index| {
                let sp = sample(spec, seed, index).spectrum();
                [
                    sp.counts[0] as f64 / q2,
                    sp.counts[1] as f64 / q2,
                    sp.counts[2] as f64 / q2,
                ]
            })
            .collect()
    } else {
        Vec::new()
    };

    let nn = BigInt::from(n);
    let per_m = (0..=m_max)
        .map(|m| {
            let i = m as usize;
            let mean = BigRational::new(BigInt::from(accum.sum[i]), nn.clone());
            // population variance: E[X²] − E[X]²
            let ex2 = BigRational::new(BigInt::from(accum.sum_sq[i]), nn.clone());
            let variance = ex2 - &mean * &mean;
            let expected = expected_xm(q, m as i64).unwrap();
            MStat {
                m,
                mean: mean.to_string(),
                mean_f64: rational_to_f64(&mean),
                variance: variance.to_string(),
                variance_f64: rational_to_f64(&variance),
                expected: expected.to_string(),
                expected_f64: rational_to_f64(&expected),
                asymptotic_f64: asym[i],
                concentration: accum.concentrated[i] as f64 / n as f64,
            }
        })
        .collect();

    (
        SampleStats {
            schema_version: 1,
            q,
            samples: n,
            seed,
            m_max,
            per_m,
            identity_failures: accum.identity_failures,
        },
        triples,
    )
}

/// Exhaustive statistics over Ω: exact mean of each X_m and the spectrum
/// functionals' constancy witness.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationStats {
    pub q: u64,
    pub count: u128,
    /// Exact mean of X_m over Ω for m in 0..=q+1.
    pub mean_xm: Vec<BigRational>,
    pub max_x0: u64,
    pub max_x1: u64,
    /// Distinct values of Σ m³ x_m observed.
    pub third_moments: Vec<i128>,
    pub identity_failures: u64,
}

/// Enumerates all of Ω and aggregates exact statistics.
pub fn enumerate_stats(
    spec: &FieldSpec,
    guard: Option<u128>,
) -> Result<EnumerationStats, SamplingError> {
    let q = spec.q();
    let mut sums = vec![0u128; q as usize + 2];
    let mut count: u128 = 0;
    let mut max_x0 = 0;
    let mut max_x1 = 0;
    let mut third_moments = std::collections::BTreeSet::new();
    let mut identity_failures = 0;
    for arr in enumerate(spec, guard)? {
        let sp = arr.spectrum();
        count += 1;
        for (m, &x) in sp.counts.iter().enumerate() {
            sums[m] += x as u128;
        }
        max_x0 = max_x0.max(sp.counts[0]);
        max_x1 = max_x1.max(sp.counts[1]);
        third_moments.insert(identities::third_moment(&sp));
        if !identities::verify_moments(&sp).all_pass() {
            identity_failures += 1;
        }
    }
    let denom = BigInt::from(count);
    let mean_xm = sums
        .iter()
        .map(|&s| BigRational::new(BigInt::from(s), denom.clone()))
        .collect();
    Ok(EnumerationStats {
        q,
        count,
        mean_xm,
        max_x0,
        max_x1,
        third_moments: third_moments.into_iter().collect(),
        identity_failures,
    })
}

/// Spectrum of the sample at `(seed, index)` — convenience for tests.
pub fn sample_spectrum(spec: &FieldSpec, seed: u64, index: u64) -> Spectrum {
    sample(spec, seed, index).spectrum()
}
