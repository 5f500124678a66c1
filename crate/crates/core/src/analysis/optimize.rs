//! Maximization of Alice's success ceiling over the nonnegative unit 3-sphere.
//!
//! Points are parameterized by three angles in `[0, pi/2]`:
//!
//! ```text
//! a00 = cos t1
//! a01 = sin t1 cos t2
//! a10 = sin t1 sin t2 cos t3
//! a11 = sin t1 sin t2 sin t3
//! ```
//!
//! A dense grid locates the basin, then a compass search on the angles
//! refines it, halving the step whenever no coordinate move improves and
//! stopping once the step drops below the refinement tolerance.

use super::objective::objective_unchecked;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::strategies::AliceCoefficients;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult<T> {
    /// Reported with `a01 >= a10`; the objective is symmetric in the two.
    pub argmax: AliceCoefficients<T>,
    pub value: T,
    /// Best value on the grid before refinement.
    pub grid_value: T,
    pub grid_resolution: usize,
    pub refinement_tolerance: T,
    pub evaluations: usize,
}

fn coefficients<T: Scalar>(angles: [T; 3]) -> [T; 4] {
    let [t1, t2, t3] = angles;
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let (s3, c3) = t3.sin_cos();
    [c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3]
}

/// Maximizes [`super::alice_objective`] with a grid of
/// `(grid_resolution + 1)^3` angle triples followed by compass refinement.
pub fn optimize_alice<T: Scalar>(
    grid_resolution: usize,
    refinement_tolerance: T,
) -> Result<OptimizationResult<T>> {
    if grid_resolution < 20 {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be at least 20, got {grid_resolution}"
        )));
    }
    if refinement_tolerance.is_nan() || refinement_tolerance <= T::zero() {
        return Err(Error::InvalidArgument(
            "refinement tolerance must be positive".into(),
        ));
    }
    let quarter = T::FRAC_PI_2();
    let res = T::from_usize(grid_resolution).expect("grid size fits");
    let angle = |i: usize| quarter * T::from_usize(i).expect("index fits") / res;
    let trig: Vec<(T, T)> = (0..=grid_resolution).map(|i| angle(i).sin_cos()).collect();

    let mut best = (T::neg_infinity(), [0usize; 3]);
    let mut evaluations = 0usize;
    for (i, &(s1, c1)) in trig.iter().enumerate() {
        for (j, &(s2, c2)) in trig.iter().enumerate() {
            for (k, &(_, c3)) in trig.iter().enumerate() {
                // a11 does not enter the objective, only the normalization.
                let v = objective_unchecked([c1, s1 * c2, s1 * s2 * c3, T::zero()]);
                evaluations += 1;
                if v > best.0 {
                    best = (v, [i, j, k]);
                }
            }
        }
    }
    let grid_value = best.0;
    let mut angles = best.1.map(angle);
    let mut value = grid_value;

    let mut step = quarter / res;
    while step >= refinement_tolerance {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [T::one(), -T::one()] {
                let mut trial = angles;
                trial[axis] = (trial[axis] + dir * step).max(T::zero()).min(quarter);
                let v = objective_unchecked(coefficients(trial));
                evaluations += 1;
                if v > value {
                    value = v;
                    angles = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step = step / T::lit(2.0);
        }
    }

    let [a00, mut a01, mut a10, a11] = coefficients(angles);
    if a10 > a01 {
        std::mem::swap(&mut a01, &mut a10);
    }
    let argmax = AliceCoefficients { a00, a01, a10, a11 };
    let value = objective_unchecked(argmax.as_array());
    Ok(OptimizationResult {
        argmax,
        value,
        grid_value,
        grid_resolution,
        refinement_tolerance,
        evaluations,
    })
}
