//! Exact verification of the moment equalities, the incidence-formula
//! recovery, the derived `x_1`/`x_2` expressions, and the inequality
//! suite, all on multiplicity spectra.
//!
//! All arithmetic is exact integer arithmetic; the rational bound
//! `x_m <= 2q(q+1)/m²` is checked by cross-multiplication.

use crate::arrangement::Spectrum;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("derived x_2 is negative ({0}): the multiplicity tail is infeasible")]
    NegativeResult(i128),
}

/// One exact (in)equality with both sides recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub lhs: i128,
    pub rhs: i128,
    pub pass: bool,
}

impl Check {
    fn eq(lhs: i128, rhs: i128) -> Self {
        Check { lhs, rhs, pass: lhs == rhs }
    }

    fn le(lhs: i128, rhs: i128) -> Self {
        Check { lhs, rhs, pass: lhs <= rhs }
    }

    fn ge(lhs: i128, rhs: i128) -> Self {
        Check { lhs, rhs, pass: lhs >= rhs }
    }

    pub fn is_sharp(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The three moment equalities: `Σ x_m = q²`, `Σ m·x_m = q(q+1)`,
/// `Σ m²·x_m = 2q(q+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub count_sum: Check,
    pub first_moment: Check,
    pub second_moment: Check,
}

impl MomentReport {
    pub fn all_pass(&self) -> bool {
        self.count_sum.pass && self.first_moment.pass && self.second_moment.pass
    }
}

pub fn verify_moments(s: &Spectrum) -> MomentReport {
    let q = s.q as i128;
    MomentReport {
        count_sum: Check::eq(moment(s, 0), q * q),
        first_moment: Check::eq(moment(s, 1), q * (q + 1)),
        second_moment: Check::eq(moment(s, 2), 2 * q * (q + 1)),
    }
}

fn moment(s: &Spectrum, k: u32) -> i128 {
    s.counts
        .iter()
        .enumerate()
        .map(|(m, &x)| (m as i128).pow(k) * x as i128)
        .sum()
}

/// `Σ m³·x_m` — not an invariant of Ω.
pub fn third_moment(s: &Spectrum) -> i128 {
    moment(s, 3)
}

/// The incidence-formula value
/// `q(q+1)/2 + Σ_{m=1}^{q+1} (m−1)(m−2)/2 · x_m`.
///
/// For a spectrum of a genuine arrangement this equals `q² − x_0`.
pub fn incidence_formula_size(s: &Spectrum) -> i128 {
    let q = s.q as i128;
    q * (q + 1) / 2
        + s.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &x)| {
                let m = m as i128;
                (m - 1) * (m - 2) / 2 * x as i128
            })
            .sum::<i128>()
}

/// Reconstructs `(x_1, x_2)` from the tail `x_3, ..., x_{q+1}`:
/// `x_1 = Σ (m²−2m) x_m` and `x_2 = q(q+1)/2 + Σ (−m²+m)/2 x_m`.
///
/// The alternative form `x_2 = C(q+1,2) − Σ C(m,2) x_m` is computed as
/// well and asserted to agree.
pub fn derived_x1_x2(tail: &[u64], q: u64) -> Result<(i128, i128), IdentityError> {
    let qi = q as i128;
    let mut x1 = 0i128;
    let mut x2 = qi * (qi + 1) / 2;
    let mut x2_alt = (qi + 1) * qi / 2; // C(q+1, 2)
    for (k, &x) in tail.iter().enumerate() {
        let m = k as i128 + 3;
        let x = x as i128;
        x1 += (m * m - 2 * m) * x;
        x2 += (-m * m + m) / 2 * x;
        x2_alt -= m * (m - 1) / 2 * x;
    }
    debug_assert_eq!(x2, x2_alt);
    if x2 < 0 {
        return Err(IdentityError::NegativeResult(x2));
    }
    Ok((x1, x2))
}

/// Bound checks from the max-`x_m` proposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `x_0 <= q(q−1)/2`
    pub x0_bound: Check,
    /// `x_1 <= q² − 1`
    pub x1_bound: Check,
    /// `m²·x_m <= 2q(q+1)` for every m >= 2 (cross-multiplied form)
    pub tail_bounds_pass: bool,
    /// The parity-exact maximum of `x_0`: `q(q−1)/2` for even q,
    /// `(q−1)²/2` for odd q.
    pub x0_exact_max: i128,
    /// Whether this spectrum attains the parity-exact `x_0` maximum.
    pub x0_attains_max: bool,
    pub all_pass: bool,
}

pub fn check_bounds(s: &Spectrum) -> BoundReport {
    let q = s.q as i128;
    let x0 = s.counts[0] as i128;
    let x1 = s.counts[1] as i128;
    let x0_bound = Check::le(x0, q * (q - 1) / 2);
    let x1_bound = Check::le(x1, q * q - 1);
    let tail_bounds_pass = s
        .counts
        .iter()
        .enumerate()
        .skip(2)
        .all(|(m, &x)| (m as i128) * (m as i128) * x as i128 <= 2 * q * (q + 1));
    let x0_exact_max = if s.q.is_multiple_of(2) {
        q * (q - 1) / 2
    } else {
        (q - 1) * (q - 1) / 2
    };
    let all_pass = x0_bound.pass && x1_bound.pass && tail_bounds_pass;
    BoundReport {
        x0_bound,
        x1_bound,
        tail_bounds_pass,
        x0_exact_max,
        x0_attains_max: x0 == x0_exact_max,
        all_pass,
    }
}

/// The three inequalities on `(x_0, x_1, x_2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeReport {
    /// `x_0 + x_1 + x_2 <= q²`
    pub sum_le: Check,
    /// `3x_0 − x_2 <= q² − 2q`
    pub diff_le: Check,
    /// `3x_0 + 2x_1 + x_2 >= 2q² − q`
    pub combo_ge: Check,
}

impl ZeReport {
    pub fn all_pass(&self) -> bool {
        self.sum_le.pass && self.diff_le.pass && self.combo_ge.pass
    }

    pub fn all_sharp(&self) -> bool {
        self.sum_le.is_sharp() && self.diff_le.is_sharp() && self.combo_ge.is_sharp()
    }
}

pub fn check_ze(s: &Spectrum) -> ZeReport {
    let q = s.q as i128;
    let (x0, x1, x2) = (s.counts[0] as i128, s.counts[1] as i128, s.counts[2] as i128);
    ZeReport {
        sum_le: Check::le(x0 + x1 + x2, q * q),
        diff_le: Check::le(3 * x0 - x2, q * q - 2 * q),
        combo_ge: Check::ge(3 * x0 + 2 * x1 + x2, 2 * q * q - q),
    }
}

/// `(x_0/q², x_1/q², x_2/q²)` as exact rationals, for the unit-cube
/// region plot.
pub fn normalized_triple(s: &Spectrum) -> [BigRational; 3] {
    let q2 = BigInt::from(s.q) * BigInt::from(s.q);
    [0, 1, 2].map(|i| BigRational::new(BigInt::from(s.counts[i]), q2.clone()))
}

/// Full per-spectrum report: every equality and inequality of the suite,
/// with both sides of each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub q: u64,
    pub moments: MomentReport,
    /// Incidence-formula value vs `q² − x_0`.
    pub incidence_formula: Check,
    /// Derived `(x_1, x_2)` from the tail vs the actual counts.
    pub x1_consistency: Check,
    pub x2_consistency: Check,
    pub bounds: BoundReport,
    pub ze: ZeReport,
    pub third_moment: i128,
    pub all_equalities_pass: bool,
}

pub fn full_report(s: &Spectrum) -> IdentityReport {
    let q = s.q;
    let moments = verify_moments(s);
    let incidence_formula =
        Check::eq(incidence_formula_size(s), (q * q - s.counts[0]) as i128);
    let (x1_consistency, x2_consistency) = match derived_x1_x2(&s.counts[3..], q) {
        Ok((dx1, dx2)) => (
            Check::eq(dx1, s.counts[1] as i128),
            Check::eq(dx2, s.counts[2] as i128),
        ),
        Err(IdentityError::NegativeResult(v)) => {
            let dx1: i128 = s.counts[3..]
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    let m = k as i128 + 3;
                    (m * m - 2 * m) * x as i128
                })
                .sum();
            (Check::eq(dx1, s.counts[1] as i128), Check::eq(v, s.counts[2] as i128))
        }
    };
    let bounds = check_bounds(s);
    let ze = check_ze(s);
    let all_equalities_pass = moments.all_pass()
        && incidence_formula.pass
        && x1_consistency.pass
        && x2_consistency.pass;
    IdentityReport {
        q,
        moments,
        incidence_formula,
        x1_consistency,
        x2_consistency,
        bounds,
        ze,
        third_moment: third_moment(s),
        all_equalities_pass,
    }
}

/// CSV header matching [`csv_row`].
pub fn csv_header(q: u64) -> String {
    let mut cols: Vec<String> = vec!["q".into()];
    cols.extend((0..=q + 1).map(|m| format!("x{m}")));
    cols.extend(
        ["sum", "moment1", "moment2", "moment3", "equalities_pass", "bounds_pass", "ze_pass"]
            .map(String::from),
    );
    cols.join(",")
}

/// One CSV row: q, the counts, the moment sums, third moment, pass flags.
pub fn csv_row(s: &Spectrum) -> String {
    let r = full_report(s);
    let mut cols: Vec<String> = vec![s.q.to_string()];
    cols.extend(s.counts.iter().map(|c| c.to_string()));
    cols.push(r.moments.count_sum.lhs.to_string());
    cols.push(r.moments.first_moment.lhs.to_string());
    cols.push(r.moments.second_moment.lhs.to_string());
    cols.push(r.third_moment.to_string());
    cols.push(r.all_equalities_pass.to_string());
    cols.push(r.bounds.all_pass.to_string());
    cols.push(r.ze.all_pass().to_string());
    cols.join(",")
}
