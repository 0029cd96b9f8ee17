//! Incidence structures shared between `F_q²` and `R²`: exact-rational
//! line arrangements in the real plane, their f-vectors, the incidence
//! class equivalence check, and the predictions tying a finite-field
//! spectrum to the bounded cell counts of a realizing real arrangement.
//!
//! The geometric verification path is deliberately limited to `f_0`
//! (deduplicated intersection points) and `f_1` (per-line segment
//! counts); `f_2` always comes from the incidence formulas, which
//! together with Euler's relation pin it down. No planar subdivision is
//! ever built.

use crate::arrangement::Spectrum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("line has zero normal vector (a = b = 0)")]
    DegenerateLine,
    #[error("duplicate line: {0}")]
    DuplicateLine(String),
    #[error("arrangement needs at least 2 lines, got {0}")]
    TooFewLines(usize),
    #[error("inconsistent incidence quantities produce a negative cell count: {0}")]
    NegativeCellCount(String),
    #[error("input spectrum violates the moment equalities; not a q+1 line arrangement spectrum")]
    IdentityViolation,
    #[error("real arrangement is not in the finite-field spectrum's incidence class")]
    PhiMismatch,
    #[error("cannot parse rational line: {0}")]
    Parse(String),
}

/// The line `a·x + b·y = c` with exact rational coefficients, stored
/// normalized so that equal lines compare equal: the first nonzero of
/// `(a, b)` is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalLine {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl RationalLine {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self, BridgeError> {
        if a.is_zero() && b.is_zero() {
            return Err(BridgeError::DegenerateLine);
        }
        let scale = if !a.is_zero() { a.clone() } else { b.clone() };
        Ok(RationalLine { a: &a / &scale, b: &b / &scale, c: &c / &scale })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        RationalLine::new(r(a), r(b), r(c)).expect("nonzero normal")
    }

    /// The line `y = s·x + t`.
    pub fn from_slope_intercept(s: BigRational, t: BigRational) -> Self {
        RationalLine::new(-s, BigRational::one(), t).expect("nonzero normal")
    }

    /// The vertical line `x = v`.
    pub fn vertical(v: BigRational) -> Self {
        RationalLine::new(BigRational::one(), BigRational::zero(), v).expect("nonzero normal")
    }

    pub fn contains(&self, p: &(BigRational, BigRational)) -> bool {
        &self.a * &p.0 + &self.b * &p.1 == self.c
    }

    /// Intersection point of two non-parallel lines; `None` if parallel
    /// (including equal).
    pub fn intersect(&self, other: &RationalLine) -> Option<(BigRational, BigRational)> {
        let det = &self.a * &other.b - &other.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &other.c * &self.b) / &det;
        let y = (&self.a * &other.c - &other.a * &self.c) / &det;
        Some((x, y))
    }
}

impl fmt::Display for RationalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

impl FromStr for RationalLine {
    type Err = BridgeError;

    /// Parses "a b c" where each part is an integer or a fraction like
    /// "-3/2", meaning the line a·x + b·y = c.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(BridgeError::Parse(format!("expected 3 rationals, got {s:?}")));
        }
        let vals: Vec<BigRational> = parts
            .iter()
            .map(|p| {
                BigRational::from_str(p)
                    .map_err(|e| BridgeError::Parse(format!("{p:?}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        RationalLine::new(vals[0].clone(), vals[1].clone(), vals[2].clone())
    }
}

/// A set of distinct rational lines in the plane. Parallel lines are
/// allowed here; duplicates are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealArrangement {
    lines: Vec<RationalLine>,
}

impl RealArrangement {
    pub fn new(lines: Vec<RationalLine>) -> Result<Self, BridgeError> {
        let mut sorted = lines.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(BridgeError::DuplicateLine(w[0].to_string()));
            }
        }
        Ok(RealArrangement { lines })
    }

    pub fn lines(&self) -> &[RationalLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Parses one "a b c" line per text line; blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self, BridgeError> {
        let lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(RationalLine::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        RealArrangement::new(lines)
    }

    fn intersection_points(&self) -> Vec<(BigRational, BigRational)> {
        let mut set = std::collections::BTreeSet::new();
        for (i, l1) in self.lines.iter().enumerate() {
            for l2 in &self.lines[i + 1..] {
                if let Some(p) = l1.intersect(l2) {
                    set.insert(p);
                }
            }
        }
        set.into_iter().collect()
    }
}

/// `p_0`, `p_1`, `p_01` and the multiplicity counts `x_i` (i >= 2) of a
/// real arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceQuantities {
    /// Number of lines.
    pub p1: u64,
    /// Number of distinct intersection points.
    pub p0: u64,
    /// Number of (line, intersection point on it) pairs.
    pub p01: u64,
    /// `spectrum[i]` = number of intersection points of multiplicity i,
    /// keyed by i >= 2.
    pub spectrum: BTreeMap<u64, u64>,
}

/// Computes all pairwise intersections exactly, deduplicates coincident
/// points, and counts per-point multiplicities.
pub fn real_quantities(a: &RealArrangement) -> Result<IncidenceQuantities, BridgeError> {
    if a.len() < 2 {
        return Err(BridgeError::TooFewLines(a.len()));
    }
    let points = a.intersection_points();
    let mut spectrum: BTreeMap<u64, u64> = BTreeMap::new();
    let mut p01 = 0u64;
    for p in &points {
        let mult = a.lines.iter().filter(|l| l.contains(p)).count() as u64;
        debug_assert!(mult >= 2);
        *spectrum.entry(mult).or_default() += 1;
        p01 += mult;
    }
    Ok(IncidenceQuantities {
        p1: a.len() as u64,
        p0: points.len() as u64,
        p01,
        spectrum,
    })
}

/// Vertex, edge, and face counts of a real line arrangement, with the
/// bounded variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
    pub f1b: u64,
    pub f2b: u64,
}

/// `f_0 = p_0`, `f_1 = p_1 + p_01`, `f_2 = 1 − p_0 + p_1 + p_01`,
/// `f_1^b = −p_1 + p_01`, `f_2^b = 1 − p_0 − p_1 + p_01`.
pub fn f_vector(q: &IncidenceQuantities) -> Result<FVector, BridgeError> {
    let (p0, p1, p01) = (q.p0 as i128, q.p1 as i128, q.p01 as i128);
    let vals = [
        ("f0", p0),
        ("f1", p1 + p01),
        ("f2", 1 - p0 + p1 + p01),
        ("f1b", -p1 + p01),
        ("f2b", 1 - p0 - p1 + p01),
    ];
    for (name, v) in vals {
        if v < 0 {
            return Err(BridgeError::NegativeCellCount(format!("{name} = {v}")));
        }
    }
    Ok(FVector {
        f0: vals[0].1 as u64,
        f1: vals[1].1 as u64,
        f2: vals[2].1 as u64,
        f1b: vals[3].1 as u64,
        f2b: vals[4].1 as u64,
    })
}

/// Independent edge count: for each line, one more than the number of
/// distinct intersection points on it. Must equal `p_1 + p_01`.
pub fn f1_direct(a: &RealArrangement) -> u64 {
    let points = a.intersection_points();
    a.lines
        .iter()
        .map(|l| points.iter().filter(|p| l.contains(p)).count() as u64 + 1)
        .sum()
}

/// Whether `a` realizes the incidence class `[x_2, ..., x_{q+1}]` of the
/// finite-field spectrum: same line count `q + 1` and the same `x_i` for
/// every `i >= 2`.
pub fn phi_check(field_spectrum: &Spectrum, a: &RealArrangement) -> bool {
    if a.len() as u64 != field_spectrum.q + 1 {
        return false;
    }
    let rq = match real_quantities(a) {
        Ok(rq) => rq,
        Err(_) => return false,
    };
    for (i, &x) in field_spectrum.counts.iter().enumerate().skip(2) {
        if rq.spectrum.get(&(i as u64)).copied().unwrap_or(0) != x {
            return false;
        }
    }
    true
}

/// Predicted quantities of any real realization, plus the finite-field
/// analogues and their Euler value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldPrediction {
    pub q: u64,
    /// `(q+1)(q−1) − x_1`
    pub f1b: u64,
    /// `x_0`
    pub f2b: u64,
    /// `(q+1)² − x_1`
    pub f1: u64,
    /// `2(q+1) + x_0`
    pub f2: u64,
    /// `Σ_{i≥2} x_i`
    pub ft0: u64,
    pub ft1: u64,
    pub ft2: u64,
    /// `(f̃_0 + 1) − f̃_1 + f̃_2`; always 2.
    pub euler_value: i128,
}

/// Theorem predictions from a finite-field spectrum of `q + 1` lines.
///
/// The first two moment equalities are preconditions and are checked.
pub fn predict_from_field(s: &Spectrum) -> Result<FieldPrediction, BridgeError> {
    let m = crate::identities::verify_moments(s);
    if !m.count_sum.pass || !m.first_moment.pass {
        return Err(BridgeError::IdentityViolation);
    }
    let q = s.q;
    let (x0, x1) = (s.counts[0], s.counts[1]);
    let ft0: u64 = s.counts[2..].iter().sum();
    let ft1 = (q + 1) * (q + 1) - x1;
    let ft2 = 2 * (q + 1) + x0;
    let euler_value = (ft0 as i128 + 1) - ft1 as i128 + ft2 as i128;
    Ok(FieldPrediction {
        q,
        f1b: (q + 1) * (q - 1) - x1,
        f2b: x0,
        f1: (q + 1) * (q + 1) - x1,
        f2: 2 * (q + 1) + x0,
        ft0,
        ft1,
        ft2,
        euler_value,
    })
}

/// Cross-validation report: the geometric route against the theorem
/// route, field by field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub prediction: FieldPrediction,
    pub quantities: IncidenceQuantities,
    pub f_vector: FVector,
    pub f1_direct: u64,
    pub euler_lhs: i128,
    pub all_match: bool,
}

/// Requires `phi_check` to pass, then asserts that the real
/// arrangement's f-vector matches the predictions from the finite-field
/// spectrum on `f1b`, `f2b`, `f1`, `f2`, and that the direct edge count
/// agrees.
pub fn cross_validate(
    field_spectrum: &Spectrum,
    a: &RealArrangement,
) -> Result<BridgeReport, BridgeError> {
    if !phi_check(field_spectrum, a) {
        return Err(BridgeError::PhiMismatch);
    }
    let prediction = predict_from_field(field_spectrum)?;
    let quantities = real_quantities(a)?;
    let fv = f_vector(&quantities)?;
    let direct = f1_direct(a);
    let euler_lhs = (fv.f0 as i128 + 1) - fv.f1 as i128 + fv.f2 as i128;
    let all_match = fv.f1b == prediction.f1b
        && fv.f2b == prediction.f2b
        && fv.f1 == prediction.f1
        && fv.f2 == prediction.f2
        && direct == fv.f1
        && euler_lhs == 2;
    Ok(BridgeReport {
        prediction,
        quantities,
        f_vector: fv,
        f1_direct: direct,
        euler_lhs,
        all_match,
    })
}

/// Hand-built rational realizations used as fixtures.
pub mod fixtures {
    use super::*;

    /// `n` lines through the origin with distinct integer slopes.
    pub fn pencil(n: u64) -> RealArrangement {
        let lines = (0..n)
            .map(|k| {
                RationalLine::from_slope_intercept(
                    BigRational::from_integer(BigInt::from(k)),
                    BigRational::zero(),
                )
            })
            .collect();
        RealArrangement::new(lines).expect("distinct slopes")
    }

    /// `n` lines in general position (no two parallel, no three
    /// concurrent): the tangents `y = 2a·x − a²` to a parabola.
    pub fn general_position(n: u64) -> RealArrangement {
        let lines = (1..=n as i64)
            .map(|a| RationalLine::from_ints(-2 * a, 1, -a * a))
            .collect();
        RealArrangement::new(lines).expect("tangent lines are distinct")
    }

    /// A rational realization of the six-line `q = 5` worked example:
    /// three triple points and six double points. Built as a triangle
    /// with one extra line through each vertex.
    pub fn q5_example_realization() -> RealArrangement {
        let lines = vec![
            RationalLine::from_ints(0, 1, 0),   // y = 0
            RationalLine::from_ints(-1, 1, 0),  // y = x
            RationalLine::from_ints(1, 1, 4),   // y = -x + 4
            RationalLine::from_ints(-3, 1, 0),  // y = 3x
            RationalLine::from_ints(-1, 2, -4), // y = (x - 4)/2
            RationalLine::from_ints(3, 1, 8),   // y = -3x + 8
        ];
        RealArrangement::new(lines).expect("distinct lines")
    }

    /// The intercept indices of the `q = 5` worked example over F_5:
    /// lines y=0, y=x+1, y=2x+1, y=3x+2, y=4x+2, x=0.
    pub const Q5_EXAMPLE_INTERCEPTS: [u64; 6] = [0, 1, 1, 2, 2, 0];
}
