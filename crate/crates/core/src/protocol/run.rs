use rand::Rng;

use super::message::{Choice, Message, ProtocolOutcome};
use super::transcript::{Event, MeasurementSummary, Transcript};
use crate::error::Result;
use crate::qstate::{Bit, Label, MeasurementRecord, Party, StateVector};
use crate::scalar::Scalar;
use crate::seed::{seeded_rng, SimRng};
use crate::strategies::{honest_alice, AliceCheatStrategy, BobCheatStrategy, Scenario};

struct Log {
    events: Vec<Event>,
}

impl Log {
    fn new() -> Self {
        Self {
            events: Vec::with_capacity(8),
        }
    }

    fn send(&mut self, sender: Party, message: Message) {
        self.events.push(Event::message(sender, message));
    }

    fn verdict(&mut self, passed: bool, probability: f64) {
        let message = if passed {
            Message::VerdictPass
        } else {
            Message::VerdictAbort
        };
        self.events.push(Event::Message {
            sent: super::message::SentMessage {
                sender: Party::Bob,
                message,
            },
            probability: Some(probability),
        });
    }

    fn measured<T: Scalar>(&mut self, party: Party, rec: &MeasurementRecord<T>) {
        self.events.push(Event::Measurement(MeasurementSummary {
            party,
            label: rec.label,
            outcome: rec.outcome,
            probability: rec.probability.to_f64_lossy(),
        }));
    }
}

fn fair_choice(rng: &mut SimRng) -> Choice {
    if rng.random_bool(0.5) {
        Choice::First
    } else {
        Choice::Second
    }
}

/// Bob's Bell test of `returned` against his half of the unchosen pair.
/// Returns whether it passed and the realized probability.
fn bell_test<T: Scalar>(
    state: &StateVector<T>,
    returned: Label,
    choice: Choice,
    rng: &mut SimRng,
) -> Result<(bool, f64)> {
    let (_, bob_half) = choice.other().pair();
    let pass = state
        .bell_overlap(returned, bob_half)?
        .to_f64_lossy()
        .clamp(0.0, 1.0);
    let u: f64 = rng.random();
    Ok(if u < pass {
        (true, pass)
    } else {
        (false, 1.0 - pass)
    })
}

/// Both parties follow the protocol. The outcome is never `Abort` and both
/// coin bits agree.
pub fn run_honest<T: Scalar>(seed: u64) -> Result<(ProtocolOutcome, Transcript)> {
    let mut rng = seeded_rng(seed);
    let mut log = Log::new();
    let state = honest_alice::<T>().initial_state().clone();
    log.send(
        Party::Alice,
        Message::StateTransfer(vec![Label::B1, Label::B2]),
    );

    let choice = fair_choice(&mut rng);
    log.send(Party::Bob, Message::ChoiceAnnouncement(choice));

    let (alice_coin, bob_coin) = choice.pair();
    let alice_rec = state.measure(alice_coin, &mut rng)?;
    log.measured(Party::Alice, &alice_rec);
    let bob_rec = alice_rec.posterior.measure(bob_coin, &mut rng)?;
    log.measured(Party::Bob, &bob_rec);

    let (returned, _) = choice.other().pair();
    log.send(Party::Alice, Message::QubitTransfer(returned));
    let (passed, p) = bell_test(&bob_rec.posterior, returned, choice, &mut rng)?;
    log.verdict(passed, p);

    let outcome = if passed {
        ProtocolOutcome::from_bit(bob_rec.outcome)
    } else {
        ProtocolOutcome::Abort
    };
    Ok((
        outcome,
        Transcript {
            seed,
            target: None,
            events: log.events,
            outcome,
        },
    ))
}

/// Alice plays `strategy`; Bob is honest. The outcome is Bob's coin bit, or
/// `Abort` if his Bell test fails. Alice wins iff the outcome equals `target`.
pub fn run_cheating_alice<T: Scalar>(
    strategy: &AliceCheatStrategy<T>,
    target: Bit,
    seed: u64,
) -> Result<(ProtocolOutcome, Transcript)> {
    strategy.validate()?;
    let mut rng = seeded_rng(seed);
    let mut log = Log::new();
    log.send(
        Party::Alice,
        Message::StateTransfer(vec![Label::B1, Label::B2]),
    );

    let choice = fair_choice(&mut rng);
    log.send(Party::Bob, Message::ChoiceAnnouncement(choice));

    let response = strategy.response(choice);
    let state = match &response.operation {
        Some(op) => strategy.initial_state().apply(op)?,
        None => strategy.initial_state().clone(),
    };

    let (_, bob_coin) = choice.pair();
    let bob_rec = state.measure(bob_coin, &mut rng)?;
    log.measured(Party::Bob, &bob_rec);

    log.send(Party::Alice, Message::QubitTransfer(response.send));
    let (passed, p) = bell_test(&bob_rec.posterior, response.send, choice, &mut rng)?;
    log.verdict(passed, p);

    let outcome = if passed {
        ProtocolOutcome::from_bit(bob_rec.outcome)
    } else {
        ProtocolOutcome::Abort
    };
    Ok((
        outcome,
        Transcript {
            seed,
            target: Some(target),
            events: log.events,
            outcome,
        },
    ))
}

/// Bob plays `strategy`; Alice is honest. The outcome is Alice's coin bit.
/// Bob issues the verdict and always passes.
pub fn run_cheating_bob<T: Scalar>(
    strategy: &BobCheatStrategy<T>,
    target: Bit,
    seed: u64,
) -> Result<(ProtocolOutcome, Transcript)> {
    strategy.validate()?;
    let mut rng = seeded_rng(seed);
    let mut log = Log::new();
    let mut state = strategy.initial_state()?;
    log.send(
        Party::Alice,
        Message::StateTransfer(vec![Label::B1, Label::B2]),
    );

    if let Some(op) = strategy.operation() {
        state = state.apply(op)?;
    }
    let mut bits = Vec::with_capacity(strategy.measured().len());
    for &label in strategy.measured() {
        let rec = state.measure(label, &mut rng)?;
        log.measured(Party::Bob, &rec);
        bits.push(rec.outcome);
        state = rec.posterior;
    }
    let choice = strategy
        .announce(&bits)
        .unwrap_or_else(|| fair_choice(&mut rng));
    log.send(Party::Bob, Message::ChoiceAnnouncement(choice));

    let (alice_coin, _) = choice.pair();
    let alice_rec = state.measure(alice_coin, &mut rng)?;
    log.measured(Party::Alice, &alice_rec);

    let (returned, _) = choice.other().pair();
    log.send(Party::Alice, Message::QubitTransfer(returned));
    log.verdict(true, 1.0);

    let outcome = ProtocolOutcome::from_bit(alice_rec.outcome);
    Ok((
        outcome,
        Transcript {
            seed,
            target: Some(target),
            events: log.events,
            outcome,
        },
    ))
}

/// Dispatches on the scenario.
pub fn run_scenario<T: Scalar>(
    scenario: &Scenario<T>,
    target: Bit,
    seed: u64,
) -> Result<(ProtocolOutcome, Transcript)> {
    match scenario {
        Scenario::Honest => run_honest::<T>(seed).map(|(o, mut t)| {
            t.target = Some(target);
            (o, t)
        }),
        Scenario::CheatingAlice(s) => run_cheating_alice(s, target, seed),
        Scenario::CheatingBob(s) => run_cheating_bob(s, target, seed),
    }
}
