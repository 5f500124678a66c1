use super::exact::exact_alice_distribution;
use crate::error::{Error, Result};
use crate::qstate::Bit;
use crate::scalar::Scalar;
use crate::strategies::{coefficient_strategy, AliceCoefficients, PhiMode, StrategyId};

/// One point on the honest-to-optimal path.
#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityPoint<T> {
    pub strategy_id: String,
    /// Interpolation parameter in `[0, 1]`.
    pub t: T,
    pub coefficients: AliceCoefficients<T>,
    pub p_win: T,
    /// Probability that the run ends with Bob's coin reading the other bit.
    pub p_lose: T,
    /// Probability that Bob's Bell test fails.
    pub p_detect: T,
}

/// Walks `steps` evenly spaced points from the honest coefficients
/// `(1/2, 1/2, 1/2, 1/2)` to the optimal ones, renormalizing each linear
/// interpolant, and evaluates target-0 statistics exactly.
pub fn sensitivity_scan<T: Scalar>(steps: usize) -> Result<Vec<SensitivityPoint<T>>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "scan needs at least 2 steps, got {steps}"
        )));
    }
    let honest = AliceCoefficients::<T>::honest().as_array();
    let optimal = AliceCoefficients::<T>::optimal().as_array();
    let last = T::from_usize(steps - 1).expect("step count fits");
    (0..steps)
        .map(|i| {
            let t = T::from_usize(i).expect("index fits") / last;
            let raw: [T; 4] = std::array::from_fn(|k| (T::one() - t) * honest[k] + t * optimal[k]);
            let c = AliceCoefficients::normalize(raw)?;
            let d = exact_alice_distribution(&coefficient_strategy(&c, PhiMode::Aligned)?)?;
            let id = StrategyId::Coefficients(c.as_array().map(Scalar::to_f64_lossy));
            Ok(SensitivityPoint {
                strategy_id: id.to_string(),
                t,
                coefficients: c,
                p_win: d.of_bit(Bit::Zero),
                p_lose: d.of_bit(Bit::One),
                p_detect: d.abort,
            })
        })
        .collect()
}
