use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use super::label::Label;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A unitary acting on a named subset of qubits.
///
/// `matrix` is row-major over the basis of `labels`, first label most
/// significant.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOp<T> {
    labels: Vec<Label>,
    matrix: Vec<Complex<T>>,
}

impl<T: Scalar> LocalOp<T> {
    pub fn new(labels: Vec<Label>, matrix: Vec<Complex<T>>) -> Result<Self> {
        let dim = 1usize << labels.len();
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::LabelCollision(*l));
            }
        }
        let op = Self { labels, matrix };
        let deviation = op.unitarity_deviation();
        if deviation > T::invariant_tol().to_f64_lossy().sqrt() {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(op)
    }

    pub fn identity(labels: Vec<Label>) -> Self {
        let dim = 1usize << labels.len();
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Self { labels, matrix }
    }

    /// Pauli X on a single qubit.
    pub fn flip(label: Label) -> Self {
        let (z, o) = (
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::one(), T::zero()),
        );
        Self {
            labels: vec![label],
            matrix: vec![z, o, o, z],
        }
    }

    /// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix.
    pub fn haar_random<R: Rng + ?Sized>(labels: Vec<Label>, rng: &mut R) -> Self {
        let dim = 1usize << labels.len();
        let mut sample = || -> T {
            let x: f64 = rng.sample(StandardNormal);
            T::lit(x)
        };
        // Columns stored contiguously while orthonormalizing.
        let mut cols: Vec<Vec<Complex<T>>> = (0..dim)
            .map(|_| (0..dim).map(|_| Complex::new(sample(), sample())).collect())
            .collect();
        for j in 0..dim {
            for k in 0..j {
                let proj = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (q, v)| {
                        acc + q.conj() * v
                    });
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v = *v - q * proj;
                }
            }
            let norm = cols[j]
                .iter()
                .fold(T::zero(), |acc, v| acc + v.norm_sqr())
                .sqrt();
            for v in &mut cols[j] {
                *v = *v / norm;
            }
        }
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                matrix[i * dim + j] = *v;
            }
        }
        Self { labels, matrix }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Complex<T>] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        1usize << self.labels.len()
    }

    /// Largest entry of `|U^dagger U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..dim {
                    acc = acc + self.matrix[k * dim + i].conj() * self.matrix[k * dim + j];
                }
                if i == j {
                    acc = acc - T::one();
                }
                worst = worst.max(acc.norm().to_f64_lossy());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::StateVector;
    use crate::seed::seeded_rng;
    use approx::assert_abs_diff_eq;

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = seeded_rng(5);
        for k in 1..=3u8 {
            let labels = (0..k).map(Label::bob_ancilla).collect();
            let u = LocalOp::<f64>::haar_random(labels, &mut rng);
            assert!(u.unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary_and_bad_shapes() {
        let c = |x: f64| Complex::new(x, 0.0);
        let err = LocalOp::new(vec![Label::A1], vec![c(1.0), c(1.0), c(0.0), c(1.0)]).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
        let err = LocalOp::new(vec![Label::A1], vec![c(1.0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn flip_on_second_position() {
        let s = StateVector::<f64>::zeros(vec![Label::A1, Label::B1, Label::A2]).unwrap();
        let out = s.apply(&LocalOp::flip(Label::B1)).unwrap();
        assert_abs_diff_eq!(out.amplitude_of("010").unwrap().re, 1.0);
    }

    #[test]
    fn two_qubit_op_respects_label_order() {
        // CNOT with control A2 and target A1, given as labels [A2, A1].
        let c = |x: f64| Complex::new(x, 0.0);
        let (o, z) = (c(1.0), c(0.0));
        let cnot = LocalOp::new(
            vec![Label::A2, Label::A1],
            vec![o, z, z, z, z, o, z, z, z, z, z, o, z, z, o, z],
        )
        .unwrap();
        let s = StateVector::<f64>::basis(vec![Label::A1, Label::B1, Label::A2], 0b001).unwrap();
        let out = s.apply(&cnot).unwrap();
        assert_abs_diff_eq!(out.amplitude_of("101").unwrap().re, 1.0);
    }
}
