use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategies::AliceCoefficients;

/// Largest probability of passing the Bell test once Bob has seen 0 on his
/// coin qubit, given the surviving amplitudes `a00`, `a01`:
/// `(a00 + a01)^2 / (2 (a00^2 + a01^2))`.
///
/// Fails with [`Error::DegenerateBranch`] when both vanish (Bob saw 1 on
/// both pairs and the bound is vacuous).
pub fn alice_fidelity_bound<T: Scalar>(a00: T, a01: T) -> Result<T> {
    if a00.abs() < T::zero_tol() && a01.abs() < T::zero_tol() {
        return Err(Error::DegenerateBranch);
    }
    let s = a00 + a01;
    Ok(s * s / (T::lit(2.0) * (a00 * a00 + a01 * a01)))
}

/// `(2 a00^2 + 2 a00 a01 + 2 a00 a10 + a01^2 + a10^2) / 4`, the ceiling on
/// Alice's success probability for target 0 given her coefficients.
pub fn alice_objective<T: Scalar>(c: &AliceCoefficients<T>) -> Result<T> {
    let norm_sqr = c.norm_sqr();
    if (norm_sqr - T::one()).abs() > T::invariant_tol() {
        return Err(Error::NotNormalized {
            norm_sqr: norm_sqr.to_f64_lossy(),
        });
    }
    Ok(objective_unchecked(c.as_array()))
}

pub(crate) fn objective_unchecked<T: Scalar>([a00, a01, a10, _]: [T; 4]) -> T {
    let two = T::lit(2.0);
    (two * a00 * a00 + two * a00 * a01 + two * a00 * a10 + a01 * a01 + a10 * a10) / T::lit(4.0)
}
