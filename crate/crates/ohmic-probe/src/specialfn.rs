//! Real-valued special functions, chiefly the Euler gamma function on the
//! analytically continued real domain.

use crate::error::{Error, Result};

/// Arguments closer than this to a non-positive integer are rejected as poles.
pub const POLE_GUARD: f64 = 1e-12;

// Lanczos-type rational approximation after Pugh ("An Analysis of the Lanczos
// Gamma Approximation", 2004, p. 116), as used by statrs. Accurate to ~1 ulp
// over the range needed here. Coefficients carry their published digits.
const GAMMA_R: f64 = 10.900511;

#[allow(clippy::excessive_precision)]
const GAMMA_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657173362492472666631120594218414085755;

/// Euler gamma function Γ(x), extended to negative non-integer arguments by
/// the reflection formula.
///
/// Returns [`Error::Pole`] when `x` is within [`POLE_GUARD`] of a
/// non-positive integer and [`Error::Domain`] for non-finite input.
pub fn gamma_euler(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument must be finite, got {x}")));
    }
    if x <= POLE_GUARD && (x - x.round()).abs() <= POLE_GUARD {
        return Err(Error::Pole { x });
    }
    Ok(gamma_unchecked(x))
}

/// Gamma without the pole guard; callers must keep away from non-positive
/// integers themselves.
pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &dk)| s + dk / (i as f64 - x));

        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + GAMMA_R) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &dk)| s + dk / (x + i as f64 - 1.0));

        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).powf(x - 0.5)
    }
}
