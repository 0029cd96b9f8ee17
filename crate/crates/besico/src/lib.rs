//! Minimal Besicovitch arrangements over `F_q²`.
//!
//! A minimal Besicovitch arrangement is a set of `q + 1` lines, one per
//! slope in `F_q ∪ {∞}`. This crate constructs, enumerates, and samples
//! such arrangements, computes their multiplicity spectra, verifies the
//! exact moment identities and inequalities those spectra satisfy,
//! evaluates the exact single-point and joint-point multiplicity laws,
//! and checks the bridge between finite-field spectra and the f-vectors
//! of realizing line arrangements in the real plane.
//!
//! All law and identity computations are exact (integer or
//! arbitrary-precision rational); floating point appears only in
//! statistical summaries and display.

pub mod arrangement;
pub mod constructions;
pub mod field;
pub mod identities;
pub mod probability;
pub mod real_bridge;
pub mod sampling;

pub use arrangement::{Line, MinimalArrangement, Point, Slope, Spectrum};
pub use field::{make_field, FieldElement, FieldSpec};
