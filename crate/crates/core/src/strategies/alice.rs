use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::protocol::Choice;
use crate::qstate::{Bit, Label, LocalOp, Party, Role, StateVector};
use crate::scalar::Scalar;

/// What Alice does once Bob has announced his choice.
#[derive(Clone, Debug, PartialEq)]
pub struct AliceResponse<T> {
    /// Unitary on qubits Alice holds, applied before she returns a qubit.
    pub operation: Option<LocalOp<T>>,
    /// The qubit handed to Bob for the Bell test.
    pub send: Label,
}

impl<T: Scalar> AliceResponse<T> {
    pub fn send(label: Label) -> Self {
        Self {
            operation: None,
            send: label,
        }
    }
}

/// A (possibly dishonest) Alice: a global initial state over
/// `{A[..], A1, B1, A2, B2}` and one response per announcement.
///
/// Any ancilla system Alice keeps lives inside `initial_state` as extra
/// `A[i]` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct AliceCheatStrategy<T> {
    initial_state: StateVector<T>,
    responses: [AliceResponse<T>; 2],
}

impl<T: Scalar> AliceCheatStrategy<T> {
    pub fn new(
        initial_state: StateVector<T>,
        on_first: AliceResponse<T>,
        on_second: AliceResponse<T>,
    ) -> Result<Self> {
        let s = Self {
            initial_state,
            responses: [on_first, on_second],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let register = self.initial_state.register();
        for required in [Label::A1, Label::B1, Label::A2, Label::B2] {
            if !register.contains(&required) {
                return Err(Error::StrategyRegisterMismatch(format!(
                    "initial state lacks {required}"
                )));
            }
        }
        if let Some(extra) = register.iter().find(|l| {
            l.role() != Role::A && ![Label::A1, Label::B1, Label::A2, Label::B2].contains(l)
        }) {
            return Err(Error::StrategyRegisterMismatch(format!(
                "{extra} is not an Alice-side qubit"
            )));
        }
        for response in &self.responses {
            if let Some(op) = &response.operation {
                if let Some(l) = op.labels().iter().find(|l| l.owner() != Party::Alice) {
                    return Err(Error::StrategyRegisterMismatch(format!(
                        "local operation touches {l}, which Alice does not hold"
                    )));
                }
                if let Some(l) = op.labels().iter().find(|l| !register.contains(l)) {
                    return Err(Error::StrategyRegisterMismatch(format!(
                        "operation on absent {l}"
                    )));
                }
            }
            if response.send.owner() != Party::Alice || !register.contains(&response.send) {
                return Err(Error::StrategyRegisterMismatch(format!(
                    "cannot send {}",
                    response.send
                )));
            }
        }
        Ok(())
    }

    pub fn initial_state(&self) -> &StateVector<T> {
        &self.initial_state
    }

    pub fn response(&self, choice: Choice) -> &AliceResponse<T> {
        match choice {
            Choice::First => &self.responses[0],
            Choice::Second => &self.responses[1],
        }
    }

    /// The same strategy with the two responses exchanged.
    pub fn with_swapped_responses(&self) -> Self {
        let [first, second] = self.responses.clone();
        Self {
            initial_state: self.initial_state.clone(),
            responses: [second, first],
        }
    }
}

fn protocol_register() -> Vec<Label> {
    vec![Label::A1, Label::B1, Label::A2, Label::B2]
}

/// Responses that return Alice's half of the pair Bob did not choose.
fn partner_responses<T: Scalar>() -> (AliceResponse<T>, AliceResponse<T>) {
    (
        AliceResponse::send(Label::A2),
        AliceResponse::send(Label::A1),
    )
}

/// Honest preparation written as a strategy: two Bell pairs, and the
/// untouched half of the unchosen pair goes back to Bob.
pub fn honest_alice<T: Scalar>() -> AliceCheatStrategy<T> {
    let state = StateVector::bell(Label::A1, Label::B1)
        .and_then(|p| p.tensor(&StateVector::bell(Label::A2, Label::B2)?))
        .expect("two Bell pairs on distinct labels");
    let (first, second) = partner_responses();
    AliceCheatStrategy {
        initial_state: state,
        responses: [first, second],
    }
}

/// The cheating state `sqrt(2/3)|0000> + (|0011> + |1100>)/sqrt(6)` over
/// `A1 B1 A2 B2` (every qubit flipped for target 1). On choice 1 Alice sends
/// A2, on choice 2 she sends A1, with no local operation.
pub fn optimal_alice<T: Scalar>(target: Bit) -> AliceCheatStrategy<T> {
    let c = AliceCoefficients::<T>::optimal();
    let state = aligned_state([c.a00, c.a01, c.a10, c.a11].map(|x| Complex::new(x, T::zero())))
        .expect("optimal coefficients are normalized");
    let state = match target {
        Bit::Zero => state,
        Bit::One => state.bit_flipped(),
    };
    let (first, second) = partner_responses();
    AliceCheatStrategy {
        initial_state: state,
        responses: [first, second],
    }
}

/// Nonnegative amplitudes `(a00, a01, a10, a11)` of Bob's qubits B1 B2 in
/// Alice's cheating state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AliceCoefficients<T> {
    pub a00: T,
    pub a01: T,
    pub a10: T,
    pub a11: T,
}

impl<T: Scalar> AliceCoefficients<T> {
    /// Requires nonnegative entries with unit squared sum (within
    /// [`Scalar::invariant_tol`]).
    pub fn new(a00: T, a01: T, a10: T, a11: T) -> Result<Self> {
        let c = Self { a00, a01, a10, a11 };
        if c.as_array()
            .iter()
            .any(|&x| x < T::zero() || !x.is_finite())
        {
            return Err(Error::InvalidArgument(
                "coefficients must be nonnegative".into(),
            ));
        }
        let norm_sqr = c.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::invariant_tol() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(c)
    }

    /// Scales an arbitrary nonnegative, nonzero tuple onto the unit sphere.
    pub fn normalize(raw: [T; 4]) -> Result<Self> {
        if raw.iter().any(|&x| x < T::zero() || !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "coefficients must be nonnegative".into(),
            ));
        }
        let norm = raw.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        if norm < T::zero_tol() {
            return Err(Error::ZeroNorm);
        }
        let [a00, a01, a10, a11] = raw.map(|x| x / norm);
        Ok(Self { a00, a01, a10, a11 })
    }

    pub fn honest() -> Self {
        let h = T::lit(0.5);
        Self {
            a00: h,
            a01: h,
            a10: h,
            a11: h,
        }
    }

    /// `(sqrt(2/3), 1/sqrt(6), 1/sqrt(6), 0)`.
    pub fn optimal() -> Self {
        let b = T::one() / T::lit(6.0).sqrt();
        Self {
            a00: (T::lit(2.0) / T::lit(3.0)).sqrt(),
            a01: b,
            a10: b,
            a11: T::zero(),
        }
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    pub fn norm_sqr(&self) -> T {
        self.as_array()
            .iter()
            .fold(T::zero(), |acc, &x| acc + x * x)
    }
}

/// How Alice's private conditional states are arranged in
/// [`coefficient_strategy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMode {
    /// Each branch `|ij>` of B1 B2 is recorded in a two-qubit ancilla `|ij>_A`
    /// while A1, A2 still mirror B1, B2.
    Orthogonal,
    /// A1 and A2 mirror B1 and B2 directly; no ancilla.
    Aligned,
}

/// `sum_ij a_ij |i>_A1 |i>_B1 |j>_A2 |j>_B2`.
fn aligned_state<T: Scalar>(a: [Complex<T>; 4]) -> Result<StateVector<T>> {
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 16];
    for (k, &amp) in a.iter().enumerate() {
        let (i, j) = (k >> 1, k & 1);
        amps[(i << 3) | (i << 2) | (j << 1) | j] = amp;
    }
    StateVector::new(protocol_register(), amps)
}

/// `sum_ij a_ij |ij>_A |i>_A1 |i>_B1 |j>_A2 |j>_B2`.
fn orthogonal_state<T: Scalar>(a: [Complex<T>; 4]) -> Result<StateVector<T>> {
    let mut register = vec![Label::alice_ancilla(0), Label::alice_ancilla(1)];
    register.extend(protocol_register());
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 64];
    for (k, &amp) in a.iter().enumerate() {
        let (i, j) = (k >> 1, k & 1);
        amps[(k << 4) | (i << 3) | (i << 2) | (j << 1) | j] = amp;
    }
    StateVector::new(register, amps)
}

/// Builds the general cheating state from real nonnegative coefficients.
pub fn coefficient_strategy<T: Scalar>(
    c: &AliceCoefficients<T>,
    mode: PhiMode,
) -> Result<AliceCheatStrategy<T>> {
    let c = AliceCoefficients::new(c.a00, c.a01, c.a10, c.a11)?;
    complex_coefficient_strategy(c.as_array().map(|x| Complex::new(x, T::zero())), mode)
}

/// As [`coefficient_strategy`] but with complex amplitudes for `|00>, |01>,
/// |10>, |11>` of B1 B2.
pub fn complex_coefficient_strategy<T: Scalar>(
    a: [Complex<T>; 4],
    mode: PhiMode,
) -> Result<AliceCheatStrategy<T>> {
    let norm_sqr = a.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    if (norm_sqr - T::one()).abs() > T::invariant_tol() {
        return Err(Error::NotNormalized {
            norm_sqr: norm_sqr.to_f64_lossy(),
        });
    }
    let state = match mode {
        PhiMode::Aligned => aligned_state(a)?,
        PhiMode::Orthogonal => orthogonal_state(a)?,
    };
    let (first, second) = partner_responses();
    AliceCheatStrategy::new(state, first, second)
}

/// A random general strategy: a Haar-random pure state on one ancilla qubit
/// plus `A1 B1 A2 B2`, Haar-random unitaries on Alice's three qubits for each
/// announcement, and a random returned qubit.
pub fn random_alice_strategy<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> AliceCheatStrategy<T> {
    let ancilla = Label::alice_ancilla(0);
    let mut register = vec![ancilla];
    register.extend(protocol_register());
    let alice_side = vec![ancilla, Label::A1, Label::A2];
    let state = StateVector::zeros(register.clone())
        .and_then(|s| s.apply(&LocalOp::haar_random(register, rng)))
        .expect("Haar unitary preserves the norm");
    let response = |rng: &mut R| AliceResponse {
        operation: Some(LocalOp::haar_random(alice_side.clone(), rng)),
        send: alice_side[rng.random_range(0..alice_side.len())],
    };
    let first = response(rng);
    let second = response(rng);
    AliceCheatStrategy {
        initial_state: state,
        responses: [first, second],
    }
}
