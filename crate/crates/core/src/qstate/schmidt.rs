//! Schmidt decomposition across a bipartition of the register.
//!
//! The coefficients are square roots of the eigenvalues of the smaller
//! reduced density matrix. The Hermitian eigenproblem is solved by cyclic
//! Jacobi on the real symmetric embedding `[[Re, -Im], [Im, Re]]`, whose
//! spectrum is the Hermitian spectrum with every eigenvalue doubled.

use num_complex::Complex;

use super::label::Label;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

impl<T: Scalar> StateVector<T> {
    /// Schmidt coefficients for the cut `cut | rest`, in descending order.
    /// There are `min(2^|cut|, 2^|rest|)` of them.
    pub fn schmidt_coefficients(&self, cut: &[Label]) -> Result<Vec<T>> {
        let n = self.num_qubits();
        if cut.is_empty() || cut.len() >= n {
            return Err(Error::InvalidCut(format!(
                "cut of {} qubits in a {}-qubit register",
                cut.len(),
                n
            )));
        }
        let mut in_cut = vec![false; n];
        for &l in cut {
            let p = self.position(l)?;
            if in_cut[p] {
                return Err(Error::InvalidCut(format!("{l} listed twice")));
            }
            in_cut[p] = true;
        }
        let cut_shifts: Vec<usize> = (0..n).filter(|&p| in_cut[p]).map(|p| n - 1 - p).collect();
        let rest_shifts: Vec<usize> = (0..n).filter(|&p| !in_cut[p]).map(|p| n - 1 - p).collect();
        let gather = |i: usize, shifts: &[usize]| {
            shifts
                .iter()
                .fold(0usize, |acc, &s| (acc << 1) | ((i >> s) & 1))
        };

        // Rows index the smaller side so the reduced matrix is as small as possible.
        let (row_shifts, col_shifts) = if cut_shifts.len() <= rest_shifts.len() {
            (&cut_shifts, &rest_shifts)
        } else {
            (&rest_shifts, &cut_shifts)
        };
        let rows = 1usize << row_shifts.len();
        let cols = 1usize << col_shifts.len();
        let zero = Complex::new(T::zero(), T::zero());
        let mut m = vec![zero; rows * cols];
        for (i, &a) in self.amplitudes().iter().enumerate() {
            m[gather(i, row_shifts) * cols + gather(i, col_shifts)] = a;
        }

        let mut rho = vec![zero; rows * rows];
        for r in 0..rows {
            for s in 0..rows {
                let mut acc = zero;
                for c in 0..cols {
                    acc = acc + m[r * cols + c] * m[s * cols + c].conj();
                }
                rho[r * rows + s] = acc;
            }
        }

        let mut eig = hermitian_eigenvalues(&rho, rows);
        eig.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Ok(eig.into_iter().map(|e| e.max(T::zero()).sqrt()).collect())
    }
}

/// Eigenvalues of an `n x n` Hermitian matrix (row-major), unordered.
fn hermitian_eigenvalues<T: Scalar>(h: &[Complex<T>], n: usize) -> Vec<T> {
    let m = 2 * n;
    let mut a = vec![T::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let mut doubled = symmetric_eigenvalues(a, m);
    doubled.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    doubled.into_iter().step_by(2).collect()
}

/// Cyclic Jacobi rotations on a dense real symmetric matrix.
fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Vec<T> {
    let two = T::lit(2.0);
    let tiny = T::epsilon() * T::epsilon();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i * n + j] * a[i * n + j]);
        if off <= tiny {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tiny {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bell_is_maximally_entangled() {
        let bell = StateVector::<f64>::bell(Label::A1, Label::B1).unwrap();
        let s = bell.schmidt_coefficients(&[Label::A1]).unwrap();
        assert_eq!(s.len(), 2);
        for c in s {
            assert_abs_diff_eq!(c, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_state_has_rank_one() {
        let s = StateVector::<f64>::zeros(vec![Label::A1, Label::B1]).unwrap();
        let c = s.schmidt_coefficients(&[Label::A1]).unwrap();
        assert_abs_diff_eq!(c[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_form_read_off() {
        let s = StateVector::<f64>::from_real(
            vec![Label::A1, Label::B1],
            &[(0.8f64).sqrt(), 0.0, 0.0, (0.2f64).sqrt()],
        )
        .unwrap();
        let c = s.schmidt_coefficients(&[Label::A1]).unwrap();
        assert_abs_diff_eq!(c[0], (0.8f64).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], (0.2f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn two_bell_pairs_across_parties() {
        let s = StateVector::<f64>::bell(Label::A1, Label::B1)
            .unwrap()
            .tensor(&StateVector::bell(Label::A2, Label::B2).unwrap())
            .unwrap();
        let c = s.schmidt_coefficients(&[Label::A1, Label::A2]).unwrap();
        assert_eq!(c.len(), 4);
        for x in c {
            assert_abs_diff_eq!(x, 0.5, epsilon = 1e-12);
        }
        // A larger cut takes the complementary side.
        let c = s
            .schmidt_coefficients(&[Label::A1, Label::B1, Label::A2])
            .unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn complex_amplitudes_handled() {
        let h = 0.5f64;
        let s = StateVector::new(
            vec![Label::A1, Label::B1],
            vec![
                Complex::new(h, 0.0),
                Complex::new(0.0, h),
                Complex::new(0.0, -h),
                Complex::new(h, 0.0),
            ],
        )
        .unwrap();
        let c = s.schmidt_coefficients(&[Label::B1]).unwrap();
        let total: f64 = c.iter().map(|x| x * x).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        assert!(c[0] >= c[1]);
    }

    #[test]
    fn invalid_cuts() {
        let s = StateVector::<f64>::bell(Label::A1, Label::B1).unwrap();
        assert!(matches!(
            s.schmidt_coefficients(&[]),
            Err(Error::InvalidCut(_))
        ));
        assert!(matches!(
            s.schmidt_coefficients(&[Label::A1, Label::B1]),
            Err(Error::InvalidCut(_))
        ));
        assert!(matches!(
            s.schmidt_coefficients(&[Label::A2]),
            Err(Error::UnknownLabel(_))
        ));
    }
}
