//! Named arrangements with closed-form spectra: the fully concurrent
//! pencil and the parabola arrangement. Both serve as fixtures and as
//! extremal witnesses (`x_1` maximum and `x_0` maximum respectively).

use crate::arrangement::{MinimalArrangement, Spectrum};
use crate::field::{make_field, FieldError, FieldSpec};

/// All `q + 1` lines through the origin: intercept 0 for every slope.
///
/// Predicted spectrum: `x_1 = q² − 1`, `x_{q+1} = 1`, all others 0.
pub fn concurrent(spec: &FieldSpec) -> (MinimalArrangement, Spectrum) {
    let q = spec.q();
    let indices = vec![0u64; q as usize + 1];
    let arr = MinimalArrangement::from_indices(spec, &indices).unwrap();
    let predicted = Spectrum::from_entries(
        q,
        &[(1, q * q - 1), (q as usize + 1, 1)],
    );
    (arr, predicted)
}

/// The parabola arrangement: intercept `−s²` for each finite slope `s`
/// and intercept 0 for the vertical line.
///
/// Predicted spectrum, by field characteristic:
/// odd: `x_0 = (q−1)²/2`, `x_1 = (3q−3)/2`, `x_2 = (q²−2q+3)/2`,
/// `x_3 = (q−1)/2`; even (`p = 2`): `x_0 = q(q−1)/2`, `x_2 = q(q+1)/2`.
pub fn parabola(spec: &FieldSpec) -> (MinimalArrangement, Spectrum) {
    let q = spec.q();
    let mut intercepts: Vec<_> = spec
        .elements()
        .map(|s| {
            let s2 = spec.mul(s, s).unwrap();
            spec.neg(s2).unwrap()
        })
        .collect();
    intercepts.push(spec.zero());
    let arr = MinimalArrangement::from_intercepts(spec, intercepts).unwrap();
    let predicted = if spec.p() == 2 {
        Spectrum::from_entries(q, &[(0, q * (q - 1) / 2), (2, q * (q + 1) / 2)])
    } else {
        Spectrum::from_entries(
            q,
            &[
                (0, (q - 1) * (q - 1) / 2),
                (1, (3 * q - 3) / 2),
                (2, (q * q - 2 * q + 3) / 2),
                (3, (q - 1) / 2),
            ],
        )
    };
    (arr, predicted)
}

/// The exact maximum of `x_0` over Ω: `q(q−1)/2` for even `q`,
/// `(q−1)²/2` for odd `q`.
pub fn extremal_x0(q: u64) -> Result<u64, FieldError> {
    let spec = make_field(q)?;
    Ok(if spec.p() == 2 {
        q * (q - 1) / 2
    } else {
        (q - 1) * (q - 1) / 2
    })
}
