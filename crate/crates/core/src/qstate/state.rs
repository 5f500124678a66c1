use std::collections::HashSet;

use num_complex::Complex;
use rand::Rng;

use super::label::{Bit, Label};
use super::op::LocalOp;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A normalized pure state over an ordered register of labeled qubits.
///
/// Position 0 of the register is the most significant bit of the basis index,
/// so `|q0 q1 ... q(n-1)>` reads left to right. Values are immutable: every
/// operation returns a new state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    register: Vec<Label>,
    amplitudes: Vec<Complex<T>>,
}

/// Outcome of a sampled computational-basis measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord<T> {
    pub label: Label,
    pub outcome: Bit,
    /// Probability of the branch that was realized.
    pub probability: T,
    pub posterior: StateVector<T>,
}

fn check_distinct(labels: &[Label]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for &l in labels {
        if !seen.insert(l) {
            return Err(Error::LabelCollision(l));
        }
    }
    Ok(())
}

impl<T: Scalar> StateVector<T> {
    /// Builds a state from explicit amplitudes, renormalizing exactly.
    ///
    /// The input must already be normalized to within [`Scalar::input_tol`].
    pub fn new(register: Vec<Label>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let expected = 1usize << register.len();
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        check_distinct(&register)?;
        let norm_sqr = amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if amplitudes.iter().all(|a| a.norm() < T::zero_tol()) {
            return Err(Error::ZeroNorm);
        }
        if (norm_sqr - T::one()).abs() > T::input_tol() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Self::normalized(register, amplitudes)
    }

    /// Like [`StateVector::new`] for real amplitudes.
    pub fn from_real(register: Vec<Label>, amplitudes: &[T]) -> Result<Self> {
        Self::new(
            register,
            amplitudes
                .iter()
                .map(|&re| Complex::new(re, T::zero()))
                .collect(),
        )
    }

    /// Computational basis state `|index>` on `register`.
    pub fn basis(register: Vec<Label>, index: usize) -> Result<Self> {
        let dim = 1usize << register.len();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        check_distinct(&register)?;
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); dim];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// `|0...0>` on `register`.
    pub fn zeros(register: Vec<Label>) -> Result<Self> {
        Self::basis(register, 0)
    }

    /// The Bell state `(|00> + |11>)/sqrt(2)` on the pair `(first, second)`.
    pub fn bell(first: Label, second: Label) -> Result<Self> {
        let h = T::FRAC_1_SQRT_2();
        let z = T::zero();
        Self::from_real(vec![first, second], &[h, z, z, h])
    }

    /// Divides by the exact computed norm. Used internally after projections.
    fn normalized(register: Vec<Label>, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt();
        if norm < T::zero_tol() {
            return Err(Error::ZeroNorm);
        }
        for a in &mut amplitudes {
            *a = *a / norm;
        }
        Ok(Self {
            register,
            amplitudes,
        })
    }

    pub fn register(&self) -> &[Label] {
        &self.register
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn num_qubits(&self) -> usize {
        self.register.len()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.register.contains(&label)
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn position(&self, label: Label) -> Result<usize> {
        self.register
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Bit shift of `label` inside a basis index.
    pub(crate) fn shift(&self, label: Label) -> Result<usize> {
        Ok(self.num_qubits() - 1 - self.position(label)?)
    }

    /// Amplitude at the basis index given as a bit string such as `"0011"`.
    pub fn amplitude_of(&self, bits: &str) -> Result<Complex<T>> {
        if bits.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                got: bits.len(),
            });
        }
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::InvalidArgument(format!("not a bit string: `{bits}`")))?;
        Ok(self.amplitudes[index])
    }

    /// Tensor product, with `self` occupying the leading positions.
    pub fn tensor(&self, right: &StateVector<T>) -> Result<Self> {
        if let Some(&l) = self.register.iter().find(|l| right.register.contains(l)) {
            return Err(Error::LabelCollision(l));
        }
        let mut register = self.register.clone();
        register.extend_from_slice(&right.register);
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| right.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// Exact probabilities of measuring 0 and 1 on `label`.
    pub fn branch_probabilities(&self, label: Label) -> Result<(T, T)> {
        let shift = self.shift(label)?;
        let (mut p0, mut p1) = (T::zero(), T::zero());
        for (i, a) in self.amplitudes.iter().enumerate() {
            if (i >> shift) & 1 == 0 {
                p0 = p0 + a.norm_sqr();
            } else {
                p1 = p1 + a.norm_sqr();
            }
        }
        Ok((p0, p1))
    }

    /// Projects `label` onto `|outcome>`, returning the branch probability and
    /// the renormalized posterior.
    pub fn project(&self, label: Label, outcome: Bit) -> Result<(T, Self)> {
        let shift = self.shift(label)?;
        let want = outcome.as_u8() as usize;
        let mut probability = T::zero();
        let amplitudes: Vec<Complex<T>> = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if (i >> shift) & 1 == want {
                    probability = probability + a.norm_sqr();
                    a
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect();
        if probability < T::zero_tol() {
            return Err(Error::ProjectionVanishes {
                probability: probability.to_f64_lossy(),
            });
        }
        Ok((
            probability,
            Self::normalized(self.register.clone(), amplitudes)?,
        ))
    }

    /// Samples a computational-basis measurement of `label`.
    pub fn measure<R: Rng + ?Sized>(
        &self,
        label: Label,
        rng: &mut R,
    ) -> Result<MeasurementRecord<T>> {
        let (p0, _) = self.branch_probabilities(label)?;
        let u: f64 = rng.random();
        let outcome = if u < p0.to_f64_lossy() {
            Bit::Zero
        } else {
            Bit::One
        };
        let (probability, posterior) = self.project(label, outcome)?;
        Ok(MeasurementRecord {
            label,
            outcome,
            probability,
            posterior,
        })
    }

    /// Probability that the pair `(first, second)` passes a projection onto
    /// the Bell state, with identity on every other qubit.
    pub fn bell_overlap(&self, first: Label, second: Label) -> Result<T> {
        let (sf, ss) = self.pair_shifts(first, second)?;
        let mask = (1usize << sf) | (1usize << ss);
        let h = T::FRAC_1_SQRT_2();
        let mut pass = T::zero();
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if i & mask == 0 {
                let c = (a + self.amplitudes[i | mask]) * h;
                pass = pass + c.norm_sqr();
            }
        }
        Ok(pass.min(T::one()))
    }

    /// Projects the pair onto the Bell state. Fails with
    /// [`Error::ProjectionVanishes`] when the pass probability is below the
    /// zero threshold, since the posterior is then undefined.
    pub fn project_bell(&self, first: Label, second: Label) -> Result<(T, Self)> {
        let (sf, ss) = self.pair_shifts(first, second)?;
        let mask = (1usize << sf) | (1usize << ss);
        let half = T::lit(0.5);
        let mut pass = T::zero();
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); self.amplitudes.len()];
        for i in 0..self.amplitudes.len() {
            if i & mask == 0 {
                let sum = self.amplitudes[i] + self.amplitudes[i | mask];
                pass = pass + sum.norm_sqr() * half;
                amplitudes[i] = sum * half;
                amplitudes[i | mask] = sum * half;
            }
        }
        if pass < T::zero_tol() {
            return Err(Error::ProjectionVanishes {
                probability: pass.to_f64_lossy(),
            });
        }
        Ok((pass, Self::normalized(self.register.clone(), amplitudes)?))
    }

    fn pair_shifts(&self, first: Label, second: Label) -> Result<(usize, usize)> {
        if first == second {
            return Err(Error::LabelCollision(first));
        }
        Ok((self.shift(first)?, self.shift(second)?))
    }

    /// Applies a local unitary to the qubits it names.
    pub fn apply(&self, op: &LocalOp<T>) -> Result<Self> {
        let shifts: Vec<usize> = op
            .labels()
            .iter()
            .map(|&l| self.shift(l))
            .collect::<Result<_>>()?;
        let dim = op.dim();
        let sub_mask: usize = shifts.iter().map(|s| 1usize << s).sum();
        let sub_index = |i: usize| -> usize {
            shifts
                .iter()
                .fold(0usize, |acc, &s| (acc << 1) | ((i >> s) & 1))
        };
        let with_sub = |base: usize, sub: usize| -> usize {
            let k = shifts.len();
            shifts
                .iter()
                .enumerate()
                .fold(base, |acc, (j, &s)| acc | (((sub >> (k - 1 - j)) & 1) << s))
        };
        let matrix = op.matrix();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amplitudes.len()];
        for (i, slot) in out.iter_mut().enumerate() {
            let row = sub_index(i);
            let base = i & !sub_mask;
            let mut acc = Complex::new(T::zero(), T::zero());
            for col in 0..dim {
                acc = acc + matrix[row * dim + col] * self.amplitudes[with_sub(base, col)];
            }
            *slot = acc;
        }
        Ok(Self {
            register: self.register.clone(),
            amplitudes: out,
        })
    }

    /// `|<self|other>|^2` for states over the same register in the same order.
    pub fn fidelity(&self, other: &StateVector<T>) -> Result<T> {
        if self.register != other.register {
            return Err(Error::InvalidArgument(
                "fidelity needs identical registers".into(),
            ));
        }
        let inner = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            });
        Ok(inner.norm_sqr())
    }

    /// Entrywise comparison (global phase matters).
    pub fn approx_eq(&self, other: &StateVector<T>, tol: T) -> bool {
        self.register == other.register
            && self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Reinterprets the register. Each entry of `relabel` maps an old label to
    /// a new one; labels not mentioned are kept.
    pub fn relabeled(&self, relabel: &[(Label, Label)]) -> Result<Self> {
        let register: Vec<Label> = self
            .register
            .iter()
            .map(|l| {
                relabel
                    .iter()
                    .find(|(from, _)| from == l)
                    .map_or(*l, |(_, to)| *to)
            })
            .collect();
        check_distinct(&register)?;
        Ok(Self {
            register,
            amplitudes: self.amplitudes.clone(),
        })
    }

    /// Flips every qubit (`X` on all positions).
    pub fn bit_flipped(&self) -> Self {
        let top = self.amplitudes.len() - 1;
        let amplitudes = (0..self.amplitudes.len())
            .map(|i| self.amplitudes[top ^ i])
            .collect();
        Self {
            register: self.register.clone(),
            amplitudes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::seeded_rng;
    use approx::assert_abs_diff_eq;

    fn eq3_state() -> StateVector<f64> {
        let a = (2.0f64 / 3.0).sqrt();
        let b = 1.0 / 6.0f64.sqrt();
        let mut amps = vec![0.0; 16];
        amps[0b0000] = a;
        amps[0b0011] = b;
        amps[0b1100] = b;
        StateVector::from_real(vec![Label::A1, Label::B1, Label::A2, Label::B2], &amps).unwrap()
    }

    #[test]
    fn make_state_bell() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::from_real(vec![Label::B1, Label::B2], &[h, 0.0, 0.0, h]).unwrap();
        assert!(s.approx_eq(&StateVector::bell(Label::B1, Label::B2).unwrap(), 1e-15));
        assert_eq!(s.amplitude(0).re, h);
    }

    #[test]
    fn make_state_basis_and_errors() {
        let s = StateVector::<f64>::from_real(vec![Label::A1], &[1.0, 0.0]).unwrap();
        assert_eq!(s.amplitudes()[0].re, 1.0);
        let err = StateVector::<f64>::from_real(vec![Label::A1], &[0.5, 0.5, 0.5, 0.5]);
        assert_eq!(
            err.unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                got: 4
            }
        );
        let err = StateVector::<f64>::from_real(vec![Label::A1], &[1e-13, 0.0]);
        assert_eq!(err.unwrap_err(), Error::ZeroNorm);
        let err = StateVector::<f64>::from_real(vec![Label::A1], &[0.6, 0.6]);
        assert!(matches!(err.unwrap_err(), Error::NotNormalized { .. }));
        let err = StateVector::<f64>::from_real(vec![Label::A1, Label::A1], &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(err.unwrap_err(), Error::LabelCollision(Label::A1));
    }

    #[test]
    fn make_state_renormalizes_small_drift() {
        let s = StateVector::<f64>::from_real(vec![Label::A1], &[0.6, 0.8 + 1e-9]).unwrap();
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn tensor_of_two_bell_pairs() {
        let p1 = StateVector::<f64>::bell(Label::A1, Label::B1).unwrap();
        let p2 = StateVector::<f64>::bell(Label::A2, Label::B2).unwrap();
        let s = p1.tensor(&p2).unwrap();
        assert_eq!(s.register(), &[Label::A1, Label::B1, Label::A2, Label::B2]);
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expected = if [0b0000, 0b0011, 0b1100, 0b1111].contains(&i) {
                0.5
            } else {
                0.0
            };
            assert_abs_diff_eq!(a.re, expected, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn tensor_basis_and_collision() {
        let a = StateVector::<f64>::zeros(vec![Label::alice_ancilla(0)]).unwrap();
        let b = StateVector::<f64>::zeros(vec![Label::A1]).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.amplitude_of("00").unwrap().re, 1.0);
        let p1 = StateVector::<f64>::bell(Label::A1, Label::B1).unwrap();
        let p2 = StateVector::<f64>::bell(Label::A1, Label::B2).unwrap();
        assert_eq!(
            p1.tensor(&p2).unwrap_err(),
            Error::LabelCollision(Label::A1)
        );
    }

    #[test]
    fn branch_probabilities_examples() {
        let bell = StateVector::<f64>::bell(Label::B1, Label::B2).unwrap();
        let (p0, p1) = bell.branch_probabilities(Label::B1).unwrap();
        assert_abs_diff_eq!(p0, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p1, 0.5, epsilon = 1e-15);

        let (p0, p1) = eq3_state().branch_probabilities(Label::B1).unwrap();
        assert_abs_diff_eq!(p0, 5.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p1, 1.0 / 6.0, epsilon = 1e-12);

        let zero = StateVector::<f64>::zeros(vec![Label::A1]).unwrap();
        assert_eq!(zero.branch_probabilities(Label::A1).unwrap(), (1.0, 0.0));
        assert_eq!(
            zero.branch_probabilities(Label::B2).unwrap_err(),
            Error::UnknownLabel(Label::B2)
        );
    }

    #[test]
    fn measure_bell_collapses_both() {
        let bell = StateVector::<f64>::bell(Label::B1, Label::B2).unwrap();
        for seed in 0..20 {
            let rec = bell.measure(Label::B1, &mut seeded_rng(seed)).unwrap();
            let idx = if rec.outcome == Bit::Zero { 0 } else { 3 };
            assert_abs_diff_eq!(rec.posterior.amplitude(idx).re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(rec.probability, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn measure_bell_frequency_is_fair() {
        let bell = StateVector::<f64>::bell(Label::B1, Label::B2).unwrap();
        let mut rng = seeded_rng(11);
        let n = 100_000;
        let zeros = (0..n)
            .filter(|_| bell.measure(Label::B1, &mut rng).unwrap().outcome == Bit::Zero)
            .count();
        assert!((zeros as f64 / n as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn measure_records_branch_probability() {
        let s = eq3_state();
        let mut rng = seeded_rng(3);
        let mut seen_zero = false;
        for _ in 0..50 {
            let rec = s.measure(Label::B1, &mut rng).unwrap();
            let expected = if rec.outcome == Bit::Zero {
                5.0 / 6.0
            } else {
                1.0 / 6.0
            };
            seen_zero |= rec.outcome == Bit::Zero;
            assert_abs_diff_eq!(rec.probability, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(rec.posterior.norm_sqr(), 1.0, epsilon = 1e-12);
        }
        assert!(seen_zero);
    }

    #[test]
    fn measure_same_seed_same_record() {
        let s = eq3_state();
        let a = s.measure(Label::B2, &mut seeded_rng(99)).unwrap();
        let b = s.measure(Label::B2, &mut seeded_rng(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn project_bell_examples() {
        let bell = StateVector::<f64>::bell(Label::A1, Label::B1).unwrap();
        let (p, post) = bell.project_bell(Label::A1, Label::B1).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert!(post.approx_eq(&bell, 1e-12));

        let zz = StateVector::<f64>::zeros(vec![Label::A1, Label::B1]).unwrap();
        let (p, post) = zz.project_bell(Label::A1, Label::B1).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        assert!(post.approx_eq(&bell, 1e-12));

        let partial = StateVector::<f64>::from_real(
            vec![Label::A1, Label::B1],
            &[(0.8f64).sqrt(), 0.0, 0.0, (0.2f64).sqrt()],
        )
        .unwrap();
        let (p, post) = partial.project_bell(Label::A1, Label::B1).unwrap();
        assert_abs_diff_eq!(p, 0.9, epsilon = 1e-12);
        assert!(post.approx_eq(&bell, 1e-12));
        assert_abs_diff_eq!(
            partial.bell_overlap(Label::B1, Label::A1).unwrap(),
            0.9,
            epsilon = 1e-12
        );
    }

    #[test]
    fn project_bell_signals_vanishing_pass() {
        let s = StateVector::<f64>::from_real(
            vec![Label::A1, Label::B1],
            &[
                std::f64::consts::FRAC_1_SQRT_2,
                0.0,
                0.0,
                -std::f64::consts::FRAC_1_SQRT_2,
            ],
        )
        .unwrap();
        assert!(s.bell_overlap(Label::A1, Label::B1).unwrap() < 1e-15);
        assert!(matches!(
            s.project_bell(Label::A1, Label::B1).unwrap_err(),
            Error::ProjectionVanishes { .. }
        ));
        assert_eq!(
            s.project_bell(Label::A1, Label::A2).unwrap_err(),
            Error::UnknownLabel(Label::A2)
        );
    }

    #[test]
    fn project_bell_acts_on_embedded_pair() {
        // Bell pair on (A2, B2) sitting behind an unrelated qubit.
        let s = StateVector::<f64>::zeros(vec![Label::A1])
            .unwrap()
            .tensor(&StateVector::bell(Label::A2, Label::B2).unwrap())
            .unwrap();
        let (p, post) = s.project_bell(Label::B2, Label::A2).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert!(post.approx_eq(&s, 1e-12));
        assert_abs_diff_eq!(
            s.bell_overlap(Label::A1, Label::B2).unwrap(),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn bit_flip_and_relabel() {
        let s = eq3_state().bit_flipped();
        assert_abs_diff_eq!(
            s.amplitude_of("1111").unwrap().re,
            (2.0f64 / 3.0).sqrt(),
            epsilon = 1e-15
        );
        let r = s
            .relabeled(&[(Label::A1, Label::alice_ancilla(0))])
            .unwrap();
        assert_eq!(r.register()[0], Label::alice_ancilla(0));
        assert!(s.relabeled(&[(Label::A1, Label::B1)]).is_err());
    }

    #[test]
    fn f32_engine_agrees() {
        let bell = StateVector::<f32>::bell(Label::A1, Label::B1).unwrap();
        let zz = StateVector::<f32>::zeros(vec![Label::A1, Label::B1]).unwrap();
        assert!((zz.bell_overlap(Label::A1, Label::B1).unwrap() - 0.5).abs() < 1e-6);
        assert!((bell.branch_probabilities(Label::B1).unwrap().0 - 0.5).abs() < 1e-6);
    }
}
