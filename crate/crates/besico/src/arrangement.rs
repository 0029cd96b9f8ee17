//! Lines and minimal Besicovitch arrangements over `F_q²`, point
//! multiplicities, and multiplicity spectra.
//!
//! A minimal Besicovitch arrangement is a set of exactly `q + 1` lines,
//! one per slope in `F_q ∪ {∞}`. The intercept vector convention used for
//! serialization everywhere in this crate: positions `0..q` hold the
//! intercepts of the finite slopes in canonical element order, position
//! `q` holds the intercept of the vertical (slope `∞`) line.

use crate::field::{FieldElement, FieldError, FieldSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("expected {expected} intercepts for q = {q}, got {got}")]
    LengthMismatch { q: u64, expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A slope in `F_q ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(FieldElement),
    Infinity,
}

/// The line `y = s·x + b` (finite slope `s`) or `x = b` (slope `∞`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub slope: Slope,
    pub intercept: FieldElement,
}

/// A point of `F_q²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Line {
    /// Point-membership test.
    pub fn contains(&self, spec: &FieldSpec, p: Point) -> Result<bool, FieldError> {
        match self.slope {
            Slope::Finite(s) => {
                let rhs = spec.add(spec.mul(s, p.x)?, self.intercept)?;
                Ok(rhs == p.y)
            }
            Slope::Infinity => Ok(p.x == self.intercept),
        }
    }

    /// The `q` points of the line, in canonical order of the free coordinate.
    pub fn points(&self, spec: &FieldSpec) -> Result<Vec<Point>, FieldError> {
        match self.slope {
            Slope::Finite(s) => spec
                .elements()
                .map(|x| {
                    let y = spec.add(spec.mul(s, x)?, self.intercept)?;
                    Ok(Point { x, y })
                })
                .collect(),
            Slope::Infinity => Ok(spec
                .elements()
                .map(|y| Point { x: self.intercept, y })
                .collect()),
        }
    }
}

/// The multiplicity spectrum `(x_0, ..., x_{q+1})` of an arrangement:
/// `counts[m]` is the number of points of `F_q²` lying on exactly `m` of
/// its lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub q: u64,
    pub counts: Vec<u64>,
}

impl Spectrum {
    pub fn new(q: u64, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len() as u64, q + 2, "spectrum has q + 2 entries");
        Spectrum { q, counts }
    }

    /// Spectrum with the given sparse entries, all others zero.
    pub fn from_entries(q: u64, entries: &[(usize, u64)]) -> Self {
        let mut counts = vec![0; q as usize + 2];
        for &(m, c) in entries {
            counts[m] = c;
        }
        Spectrum { q, counts }
    }

    /// `|B̃| = Σ_{m≥1} x_m`, the number of covered points.
    pub fn covered_points(&self) -> u64 {
        self.counts[1..].iter().sum()
    }

    /// The incidence class `[x_2, ..., x_{q+1}]` (drops `x_0` and `x_1`).
    pub fn incidence_class(&self) -> Vec<u64> {
        self.counts[2..].to_vec()
    }
}

/// An element of `Ω`: one intercept per slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalArrangement {
    spec: FieldSpec,
    /// Intercepts in slope order: finite slopes by canonical index, then `∞`.
    intercepts: Vec<FieldElement>,
}

impl MinimalArrangement {
    pub fn from_intercepts(
        spec: &FieldSpec,
        intercepts: Vec<FieldElement>,
    ) -> Result<Self, ArrangementError> {
        let expected = spec.q() as usize + 1;
        if intercepts.len() != expected {
            return Err(ArrangementError::LengthMismatch {
                q: spec.q(),
                expected,
                got: intercepts.len(),
            });
        }
        for &b in &intercepts {
            // surfaces FieldMismatch for intercepts from another field
            spec.add(b, spec.zero())?;
        }
        Ok(MinimalArrangement { spec: spec.clone(), intercepts })
    }

    /// Builds an arrangement from canonical intercept indices.
    pub fn from_indices(spec: &FieldSpec, indices: &[u64]) -> Result<Self, ArrangementError> {
        let intercepts = indices
            .iter()
            .map(|&i| spec.element(i))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_intercepts(spec, intercepts)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Canonical serialization: intercept indices in slope order.
    pub fn to_indices(&self) -> Vec<u64> {
        self.intercepts.iter().map(|b| b.index()).collect()
    }

    pub fn lines(&self) -> Vec<Line> {
        let q = self.spec.q() as usize;
        let mut out: Vec<Line> = self
            .spec
            .elements()
            .zip(&self.intercepts)
            .map(|(s, &b)| Line { slope: Slope::Finite(s), intercept: b })
            .collect();
        out.push(Line { slope: Slope::Infinity, intercept: self.intercepts[q] });
        out
    }

    /// Number of lines of the arrangement through `P`, by an `O(q+1)`
    /// per-slope test. At most one line per slope passes through a point,
    /// so the result is at most `q + 1`.
    pub fn multiplicity(&self, p: Point) -> Result<u64, FieldError> {
        self.spec.add(p.x, p.y)?; // field membership check
        Ok(self.multiplicity_raw(p.x.index(), p.y.index()))
    }

    fn multiplicity_raw(&self, x: u64, y: u64) -> u64 {
        let spec = &self.spec;
        let q = spec.q() as usize;
        let mut m = 0;
        for (s, b) in self.intercepts[..q].iter().enumerate() {
            let rhs = spec.add_raw(spec.mul_raw(s as u64, x), b.index());
            if rhs == y {
                m += 1;
            }
        }
        if self.intercepts[q].index() == x {
            m += 1;
        }
        m
    }

    /// The multiplicity spectrum, by brute-force multiplicity of all `q²`
    /// points.
    pub fn spectrum(&self) -> Spectrum {
        let q = self.spec.q();
        let mut counts = vec![0u64; q as usize + 2];
        for x in 0..q {
            for y in 0..q {
                counts[self.multiplicity_raw(x, y) as usize] += 1;
            }
        }
        Spectrum { q, counts }
    }

    /// `|B̃| = q² − x_0`.
    pub fn besicovitch_set_size(&self) -> u64 {
        self.spectrum().covered_points()
    }
}
