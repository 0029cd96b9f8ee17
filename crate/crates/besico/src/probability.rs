//! Exact rational single-point and joint-point multiplicity laws, the
//! expected spectrum, and the variance assembly that witnesses the
//! constancy of the three spectrum functionals.
//!
//! Everything here is arbitrary-precision rational arithmetic; callers
//! convert to floating point only for display. The convention `0^0 = 1`
//! is load-bearing: at `q = 2` the joint law's base `q − 2` is zero and
//! the zero-exponent terms must still contribute.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbabilityError {
    #[error("multiplicity {m} out of range 0..={max} for q = {q}")]
    OutOfRange { q: u64, m: i64, max: u64 },
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Binomial coefficient C(n, k) as a big integer; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Three-part multinomial coefficient `a! / (b! c! d!)`.
///
/// Zero when any of `b`, `c`, `d` is negative or when they do not sum to
/// `a`.
pub fn multinomial3(a: u64, b: i64, c: i64, d: i64) -> BigInt {
    if b < 0 || c < 0 || d < 0 {
        return BigInt::zero();
    }
    if (b + c + d) as u64 != a {
        return BigInt::zero();
    }
    factorial(a) / (factorial(b as u64) * factorial(c as u64) * factorial(d as u64))
}

fn check_range(q: u64, m: i64) -> Result<u64, ProbabilityError> {
    if m < 0 || m as u64 > q + 1 {
        return Err(ProbabilityError::OutOfRange { q, m, max: q + 1 });
    }
    Ok(m as u64)
}

/// `P{f_{m,P} = 1} = C(q+1, m) (1/q)^m (1 − 1/q)^{q+1−m}`, independent of
/// the point `P`.
pub fn single_point_law(q: u64, m: i64) -> Result<BigRational, ProbabilityError> {
    let m = check_range(q, m)?;
    let num = binomial(q + 1, m) * BigInt::from(q - 1).pow((q + 1 - m) as u32);
    let den = BigInt::from(q).pow((q + 1) as u32);
    Ok(BigRational::new(num, den))
}

/// `P{f_{i,P} = f_{j,Q} = 1}` for two distinct points `P ≠ Q`:
///
/// ```text
/// C(q; i−1, j−1, q−i−j+2) (q−2)^{q−(i−1)−(j−1)} / q^{q+1}
///   + C(q; i, j, q−i−j) (q−1)(q−2)^{q−i−j} / q^{q+1}
/// ```
///
/// The first term is the event that the line through `P` and `Q` belongs
/// to the arrangement, the second that it does not. The multinomial
/// zero convention makes the formula valid over the whole index square
/// `{0, ..., q+1}²`.
pub fn joint_point_law(q: u64, i: i64, j: i64) -> Result<BigRational, ProbabilityError> {
    let iu = check_range(q, i)? as i64;
    let ju = check_range(q, j)? as i64;
    let qi = q as i64;
    let den = BigInt::from(q).pow((q + 1) as u32);

    let mut num = BigInt::zero();
    let c1 = multinomial3(q, iu - 1, ju - 1, qi - iu - ju + 2);
    if !c1.is_zero() {
        // exponent q−(i−1)−(j−1) = q−i−j+2 >= 0 whenever c1 != 0
        let e = (qi - iu - ju + 2) as u32;
        num += c1 * BigInt::from(q as i64 - 2).pow(e);
    }
    let c2 = multinomial3(q, iu, ju, qi - iu - ju);
    if !c2.is_zero() {
        let e = (qi - iu - ju) as u32;
        num += c2 * BigInt::from(q - 1) * BigInt::from(q as i64 - 2).pow(e);
    }
    Ok(BigRational::new(num, den))
}

/// `E(X_m) = q² · P{f_{m,P} = 1}`.
pub fn expected_xm(q: u64, m: i64) -> Result<BigRational, ProbabilityError> {
    Ok(single_point_law(q, m)? * BigRational::from_integer(BigInt::from(q * q)))
}

/// Mean and variance of one of the three spectrum functionals, assembled
/// from the exact laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawMoments {
    pub mean: BigRational,
    pub variance: BigRational,
}

/// Which spectrum functional: `S = (1/q²)Σ X_m`, `M̄ = (1/q²)Σ m X_m`, or
/// `V = (1/q²)Σ m² X_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Total,
    MeanMultiplicity,
    SecondMoment,
}

impl Functional {
    fn weight(&self, m: u64) -> BigInt {
        let m = BigInt::from(m);
        match self {
            Functional::Total => BigInt::one(),
            Functional::MeanMultiplicity => m,
            Functional::SecondMoment => &m * &m,
        }
    }
}

/// Assembles mean and variance of the functional from the exact laws:
///
/// ```text
/// Var = (q²−1)/q² · Σ_{i,j} w(i)w(j) P{f_i,P = f_j,Q = 1}
///     + 1/q² · Σ_i w(i)² P{f_i,P = 1}  −  mean²
/// ```
///
/// For every functional the result is exactly zero.
pub fn law_moments(q: u64, functional: Functional) -> LawMoments {
    let q2 = BigRational::from_integer(BigInt::from(q * q));
    let mut mean = BigRational::zero();
    for m in 0..=q + 1 {
        let w = BigRational::from_integer(functional.weight(m));
        mean += w * single_point_law(q, m as i64).unwrap();
    }

    let mut joint_sum = BigRational::zero();
    for i in 0..=q + 1 {
        let wi = BigRational::from_integer(functional.weight(i));
        for j in 0..=q + 1 {
            let wj = BigRational::from_integer(functional.weight(j));
            joint_sum += &wi * wj * joint_point_law(q, i as i64, j as i64).unwrap();
        }
    }
    let mut single_sum = BigRational::zero();
    for i in 0..=q + 1 {
        let w = BigRational::from_integer(functional.weight(i));
        single_sum += &w * &w * single_point_law(q, i as i64).unwrap();
    }

    let one = BigRational::one();
    let variance =
        (&q2 - &one) / &q2 * joint_sum + &one / &q2 * single_sum - &mean * &mean;
    LawMoments { mean, variance }
}

/// Renders a rational as a short decimal string for table output.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let f = rational_to_f64(r);
    format!("{f:.digits$}")
}

/// Lossy conversion for presentation and statistical thresholds.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial3(4, 2, 1, 1), BigInt::from(12));
        assert_eq!(multinomial3(5, -1, 3, 3), BigInt::zero());
        assert_eq!(multinomial3(3, 3, 0, 0), BigInt::one());
        assert_eq!(multinomial3(4, 1, 1, 1), BigInt::zero()); // parts don't sum
    }

    #[test]
    fn single_law_small_q() {
        // frozen from exhaustive enumeration of the 8 arrangements at q=2
        assert_eq!(single_point_law(2, 1).unwrap(), frac(3, 8));
        assert_eq!(single_point_law(2, 3).unwrap(), frac(1, 8));
        assert_eq!(single_point_law(3, 0).unwrap(), frac(16, 81));
        assert!(single_point_law(2, 4).is_err());
        assert!(single_point_law(2, -1).is_err());
    }

    #[test]
    fn joint_law_small_q() {
        // frozen from exhaustive enumeration over all 8 arrangements at
        // q=2 with P=(0,0), Q=(1,0)
        assert_eq!(joint_point_law(2, 1, 1).unwrap(), frac(1, 4));
        assert_eq!(joint_point_law(2, 2, 2).unwrap(), frac(1, 4));
        assert_eq!(joint_point_law(2, 0, 2).unwrap(), frac(1, 8));
        assert_eq!(joint_point_law(2, 0, 0).unwrap(), BigRational::zero());
        // i + j > q + 2 is impossible
        assert_eq!(joint_point_law(3, 4, 4).unwrap(), BigRational::zero());
        assert_eq!(joint_point_law(3, 0, 0).unwrap(), frac(2, 81));
    }

    #[test]
    fn expected_xm_q2() {
        assert_eq!(expected_xm(2, 0).unwrap(), frac(1, 2));
        let table: Vec<BigRational> =
            (0..=3).map(|m| expected_xm(2, m).unwrap()).collect();
        assert_eq!(table, vec![frac(1, 2), frac(3, 2), frac(3, 2), frac(1, 2)]);
    }

    #[test]
    fn single_law_sums_to_one() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 32, 64] {
            let total: BigRational =
                (0..=q + 1).map(|m| single_point_law(q, m as i64).unwrap()).sum();
            assert!(total.is_one(), "q = {q}");
        }
    }

    #[test]
    fn joint_law_sums_and_marginals() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let mut total = BigRational::zero();
            for i in 0..=q + 1 {
                let mut marginal = BigRational::zero();
                for j in 0..=q + 1 {
                    marginal += joint_point_law(q, i as i64, j as i64).unwrap();
                }
                assert_eq!(
                    marginal,
                    single_point_law(q, i as i64).unwrap(),
                    "marginal at q = {q}, i = {i}"
                );
                total += marginal;
            }
            assert!(total.is_one(), "q = {q}");
        }
    }

    #[test]
    fn expected_spectrum_moment_identities() {
        for q in [2u64, 3, 4, 5, 8, 16] {
            let sum: BigRational =
                (0..=q + 1).map(|m| expected_xm(q, m as i64).unwrap()).sum();
            assert_eq!(sum, BigRational::from_integer((q * q).into()));
            let m1: BigRational = (0..=q + 1)
                .map(|m| expected_xm(q, m as i64).unwrap() * BigRational::from_integer(m.into()))
                .sum();
            assert_eq!(m1, BigRational::from_integer((q * (q + 1)).into()));
            let m2: BigRational = (0..=q + 1)
                .map(|m| {
                    expected_xm(q, m as i64).unwrap()
                        * BigRational::from_integer((m * m).into())
                })
                .sum();
            assert_eq!(m2, BigRational::from_integer((2 * q * (q + 1)).into()));
        }
    }

    #[test]
    fn variances_cancel_exactly() {
        for q in [2u64, 3, 4, 5] {
            for (functional, mean) in [
                (Functional::Total, frac(1, 1)),
                (Functional::MeanMultiplicity, frac(q as i64 + 1, q as i64)),
                (Functional::SecondMoment, frac(2 * (q as i64 + 1), q as i64)),
            ] {
                let lm = law_moments(q, functional);
                assert_eq!(lm.mean, mean, "mean at q = {q}");
                assert!(lm.variance.is_zero(), "variance at q = {q}: {}", lm.variance);
            }
        }
    }

    #[test]
    fn asymptotic_expected_xm() {
        // E(X_m) ~ q²/(m! e) for large q at fixed m
        let q = 997u64;
        for m in 0..4 {
            let exact = rational_to_f64(&expected_xm(q, m).unwrap());
            let mfact: f64 = (1..=m.max(1) as u64).product::<u64>() as f64;
            let asym = (q * q) as f64 / (mfact * std::f64::consts::E);
            assert!(
                (exact - asym).abs() < 0.01 * asym + q as f64,
                "m = {m}: {exact} vs {asym}"
            );
        }
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }

    #[test]
    fn variance_is_positive_without_dependence_correction() {
        // sanity: the diagonal single-law term is genuinely needed; using
        // the joint law for P = Q as well would not cancel
        let q = 3u64;
        let mut wrong = BigRational::zero();
        for i in 0..=q + 1 {
            for j in 0..=q + 1 {
                wrong += joint_point_law(q, i as i64, j as i64).unwrap();
            }
        }
        // the full joint mass is 1, so a fully-joint assembly would give
        // variance 1 - mean² = 0 only by luck for Total; for M̄ it differs
        let mut wrong_m = BigRational::zero();
        for i in 0..=q + 1 {
            for j in 0..=q + 1 {
                wrong_m += BigRational::from_integer((i * j).into())
                    * joint_point_law(q, i as i64, j as i64).unwrap();
            }
        }
        let mean = law_moments(q, Functional::MeanMultiplicity).mean;
        assert_ne!(wrong_m, &mean * &mean);
        assert!(wrong.is_one());
    }
}
