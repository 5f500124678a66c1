use num_complex::Complex;
use rand::Rng;

use super::exact::exact_alice_distribution;
use crate::error::{Error, Result};
use crate::qstate::Bit;
use crate::scalar::Scalar;
use crate::strategies::{complex_coefficient_strategy, AliceCoefficients, PhiMode};

/// Largest exact target-0 win probability over aligned strategies whose
/// coefficient magnitudes are `c` and whose phases on `a01`, `a10`, `a11` are
/// drawn uniformly. The first sample is the all-zero phase assignment.
pub fn phase_sweep<T: Scalar, R: Rng + ?Sized>(
    c: &AliceCoefficients<T>,
    samples: usize,
    rng: &mut R,
) -> Result<T> {
    if samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "phase sweep needs at least 100 samples, got {samples}"
        )));
    }
    let c = AliceCoefficients::new(c.a00, c.a01, c.a10, c.a11)?;
    let mut best = T::neg_infinity();
    for n in 0..samples {
        let phases: [T; 3] = if n == 0 {
            [T::zero(); 3]
        } else {
            std::array::from_fn(|_| T::lit(rng.random::<f64>() * std::f64::consts::TAU))
        };
        let amps = [
            Complex::new(c.a00, T::zero()),
            Complex::from_polar(c.a01, phases[0]),
            Complex::from_polar(c.a10, phases[1]),
            Complex::from_polar(c.a11, phases[2]),
        ];
        let strategy = complex_coefficient_strategy(amps, PhiMode::Aligned)?;
        best = best.max(exact_alice_distribution(&strategy)?.of_bit(Bit::Zero));
    }
    Ok(best)
}
