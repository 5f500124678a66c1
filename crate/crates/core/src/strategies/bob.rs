use rand::Rng;

use crate::error::{Error, Result};
use crate::protocol::Choice;
use crate::qstate::{Bit, Label, LocalOp, Party, StateVector};
use crate::scalar::Scalar;

/// How Bob turns his classical measurement results into an announcement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnounceRule {
    /// Fair coin, as an honest Bob does.
    Uniform,
    /// Lookup by the measured bits read as a binary number, first measured
    /// label most significant.
    Table(Vec<Choice>),
}

/// A (possibly dishonest) Bob: an optional unitary on the qubits he holds,
/// computational-basis measurements of some of them, and an announcement rule.
/// Bob controls the verdict and always reports a pass.
#[derive(Clone, Debug, PartialEq)]
pub struct BobCheatStrategy<T> {
    ancilla_qubits: u8,
    operation: Option<LocalOp<T>>,
    measured: Vec<Label>,
    announce: AnnounceRule,
}

impl<T: Scalar> BobCheatStrategy<T> {
    pub fn new(
        ancilla_qubits: u8,
        operation: Option<LocalOp<T>>,
        measured: Vec<Label>,
        announce: AnnounceRule,
    ) -> Result<Self> {
        let s = Self {
            ancilla_qubits,
            operation,
            measured,
            announce,
        };
        s.validate()?;
        Ok(s)
    }

    /// The qubits Bob may touch: B1, B2 and his ancilla.
    pub fn bob_labels(&self) -> Vec<Label> {
        let mut labels = vec![Label::B1, Label::B2];
        labels.extend((0..self.ancilla_qubits).map(Label::bob_ancilla));
        labels
    }

    pub fn validate(&self) -> Result<()> {
        let allowed = self.bob_labels();
        let check = |l: &Label| {
            if l.owner() == Party::Bob && allowed.contains(l) {
                Ok(())
            } else {
                Err(Error::StrategyRegisterMismatch(format!(
                    "Bob cannot act on {l}"
                )))
            }
        };
        if let Some(op) = &self.operation {
            op.labels().iter().try_for_each(check)?;
        }
        self.measured.iter().try_for_each(check)?;
        for (i, l) in self.measured.iter().enumerate() {
            if self.measured[..i].contains(l) {
                return Err(Error::LabelCollision(*l));
            }
        }
        if let AnnounceRule::Table(table) = &self.announce {
            let expected = 1usize << self.measured.len();
            if table.len() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    got: table.len(),
                });
            }
        }
        Ok(())
    }

    pub fn operation(&self) -> Option<&LocalOp<T>> {
        self.operation.as_ref()
    }

    pub fn measured(&self) -> &[Label] {
        &self.measured
    }

    pub fn announce_rule(&self) -> &AnnounceRule {
        &self.announce
    }

    /// Announcement for the given measurement bits, or `None` when the rule
    /// is a fair coin.
    pub fn announce(&self, bits: &[Bit]) -> Option<Choice> {
        match &self.announce {
            AnnounceRule::Uniform => None,
            AnnounceRule::Table(table) => {
                let idx = bits
                    .iter()
                    .fold(0usize, |acc, b| (acc << 1) | b.as_u8() as usize);
                Some(table[idx])
            }
        }
    }

    /// Joint state right after Alice's honest preparation, with Bob's ancilla
    /// appended in `|0...0>`.
    pub fn initial_state(&self) -> Result<StateVector<T>> {
        let pairs = StateVector::bell(Label::A1, Label::B1)?
            .tensor(&StateVector::bell(Label::A2, Label::B2)?)?;
        if self.ancilla_qubits == 0 {
            return Ok(pairs);
        }
        pairs.tensor(&StateVector::zeros(
            (0..self.ancilla_qubits).map(Label::bob_ancilla).collect(),
        )?)
    }
}

/// Honest Bob: no operation, fair-coin choice.
pub fn honest_bob<T: Scalar>() -> BobCheatStrategy<T> {
    BobCheatStrategy {
        ancilla_qubits: 0,
        operation: None,
        measured: Vec::new(),
        announce: AnnounceRule::Uniform,
    }
}

/// Always announces `choice`.
pub fn constant_bob<T: Scalar>(choice: Choice) -> BobCheatStrategy<T> {
    BobCheatStrategy {
        ancilla_qubits: 0,
        operation: None,
        measured: Vec::new(),
        announce: AnnounceRule::Table(vec![choice]),
    }
}

/// Measure B1 and B2; announce a pair whose result equals `target`, pair 1
/// when both or neither do.
pub fn measure_and_pick_bob<T: Scalar>(target: Bit) -> BobCheatStrategy<T> {
    let table = [
        (Bit::Zero, Bit::Zero),
        (Bit::Zero, Bit::One),
        (Bit::One, Bit::Zero),
        (Bit::One, Bit::One),
    ]
    .iter()
    .map(|&(b1, b2)| {
        if b1 != target && b2 == target {
            Choice::Second
        } else {
            Choice::First
        }
    })
    .collect();
    BobCheatStrategy {
        ancilla_qubits: 0,
        operation: None,
        measured: vec![Label::B1, Label::B2],
        announce: AnnounceRule::Table(table),
    }
}

/// Haar-random unitary on B1, B2 and one ancilla qubit, then a measurement
/// of the ancilla plus a random subset of B1, B2, and a random lookup table.
pub fn random_bob_strategy<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> BobCheatStrategy<T> {
    let ancilla = Label::bob_ancilla(0);
    let operation = LocalOp::haar_random(vec![Label::B1, Label::B2, ancilla], rng);
    let mut measured = vec![ancilla];
    for l in [Label::B1, Label::B2] {
        if rng.random_bool(0.5) {
            measured.push(l);
        }
    }
    let table = (0..1usize << measured.len())
        .map(|_| {
            if rng.random_bool(0.5) {
                Choice::First
            } else {
                Choice::Second
            }
        })
        .collect();
    BobCheatStrategy {
        ancilla_qubits: 1,
        operation: Some(operation),
        measured,
        announce: AnnounceRule::Table(table),
    }
}
