//! Exact branch enumeration of protocol runs.
//!
//! Every random event in a run (Bob's announcement, each computational-basis
//! measurement, the Bell test) is expanded into its branches with their exact
//! probabilities from the state engine, so the results carry no sampling
//! error.

use crate::error::Result;
use crate::protocol::Choice;
use crate::qstate::{Bit, Party, StateVector};
use crate::scalar::Scalar;
use crate::strategies::{honest_alice, AliceCheatStrategy, BobCheatStrategy, Scenario};

/// Maximum cheating probability for either party, for either target.
pub fn analytic_bound<T: Scalar>() -> T {
    T::lit(0.75)
}

/// `1/sqrt(2) - 1/2`, the lower limit on the bias of any strong coin tossing
/// protocol. Reported for reference only.
pub fn kitaev_reference<T: Scalar>() -> T {
    T::FRAC_1_SQRT_2() - T::lit(0.5)
}

/// Exact probabilities of the three run outcomes, from the honest party's
/// point of view.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutcomeDistribution<T> {
    pub heads: T,
    pub tails: T,
    pub abort: T,
}

impl<T: Scalar> OutcomeDistribution<T> {
    fn zero() -> Self {
        Self {
            heads: T::zero(),
            tails: T::zero(),
            abort: T::zero(),
        }
    }

    fn add_bit(&mut self, bit: Bit, p: T) {
        match bit {
            Bit::Zero => self.heads = self.heads + p,
            Bit::One => self.tails = self.tails + p,
        }
    }

    pub fn of_bit(&self, bit: Bit) -> T {
        match bit {
            Bit::Zero => self.heads,
            Bit::One => self.tails,
        }
    }

    pub fn total(&self) -> T {
        self.heads + self.tails + self.abort
    }
}

/// Exact cheating statistics for one party aiming at one outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiasReport<T> {
    pub party: Party,
    pub target: Bit,
    pub p_win_exact: T,
    pub p_abort_exact: T,
    pub analytic_bound: T,
    /// `p_win_exact - 1/2`.
    pub epsilon: T,
    pub kitaev_reference: T,
}

impl<T: Scalar> BiasReport<T> {
    pub fn new(party: Party, target: Bit, dist: &OutcomeDistribution<T>) -> Self {
        let p_win = dist.of_bit(target);
        Self {
            party,
            target,
            p_win_exact: p_win,
            p_abort_exact: dist.abort,
            analytic_bound: analytic_bound(),
            epsilon: p_win - T::lit(0.5),
            kitaev_reference: kitaev_reference(),
        }
    }

    /// `p_win_exact <= analytic_bound + 1e-9`.
    pub fn respects_bound(&self) -> bool {
        self.p_win_exact <= self.analytic_bound + T::lit(1e-9)
    }
}

/// Both parties honest.
pub fn exact_honest_distribution<T: Scalar>() -> Result<OutcomeDistribution<T>> {
    // Alice's own coin measurement acts on a qubit outside Bob's Bell test
    // and does not change his statistics, so the honest run is the honest
    // preparation evaluated against an honest Bob.
    exact_alice_distribution(&honest_alice())
}

/// Alice plays `strategy` against an honest Bob.
pub fn exact_alice_distribution<T: Scalar>(
    strategy: &AliceCheatStrategy<T>,
) -> Result<OutcomeDistribution<T>> {
    strategy.validate()?;
    let half = T::lit(0.5);
    let mut dist = OutcomeDistribution::zero();
    for choice in Choice::BOTH {
        let response = strategy.response(choice);
        let state = match &response.operation {
            Some(op) => strategy.initial_state().apply(op)?,
            None => strategy.initial_state().clone(),
        };
        let (_, bob_coin) = choice.pair();
        let (_, bob_check) = choice.other().pair();
        for bit in Bit::BOTH {
            let (p_bit, posterior) = match state.project(bob_coin, bit) {
                Ok(branch) => branch,
                Err(crate::Error::ProjectionVanishes { .. }) => continue,
                Err(e) => return Err(e),
            };
            let pass = posterior.bell_overlap(response.send, bob_check)?;
            dist.add_bit(bit, half * p_bit * pass);
            dist.abort = dist.abort + half * p_bit * (T::one() - pass);
        }
    }
    Ok(dist)
}

/// Bob plays `strategy` against an honest Alice. Never aborts.
pub fn exact_bob_distribution<T: Scalar>(
    strategy: &BobCheatStrategy<T>,
) -> Result<OutcomeDistribution<T>> {
    strategy.validate()?;
    let mut state = strategy.initial_state()?;
    if let Some(op) = strategy.operation() {
        state = state.apply(op)?;
    }
    let mut dist = OutcomeDistribution::zero();
    let mut bits = Vec::with_capacity(strategy.measured().len());
    bob_branches(strategy, &state, T::one(), &mut bits, &mut dist)?;
    Ok(dist)
}

fn bob_branches<T: Scalar>(
    strategy: &BobCheatStrategy<T>,
    state: &StateVector<T>,
    weight: T,
    bits: &mut Vec<Bit>,
    dist: &mut OutcomeDistribution<T>,
) -> Result<()> {
    if let Some(&label) = strategy.measured().get(bits.len()) {
        for bit in Bit::BOTH {
            let (p, posterior) = match state.project(label, bit) {
                Ok(branch) => branch,
                Err(crate::Error::ProjectionVanishes { .. }) => continue,
                Err(e) => return Err(e),
            };
            bits.push(bit);
            bob_branches(strategy, &posterior, weight * p, bits, dist)?;
            bits.pop();
        }
        return Ok(());
    }
    let choices: Vec<(Choice, T)> = match strategy.announce(bits) {
        Some(c) => vec![(c, T::one())],
        None => Choice::BOTH.iter().map(|&c| (c, T::lit(0.5))).collect(),
    };
    for (choice, p_choice) in choices {
        let (alice_coin, _) = choice.pair();
        let (p0, p1) = state.branch_probabilities(alice_coin)?;
        dist.heads = dist.heads + weight * p_choice * p0;
        dist.tails = dist.tails + weight * p_choice * p1;
    }
    Ok(())
}

/// Exact outcome distribution for any scenario.
pub fn exact_distribution<T: Scalar>(scenario: &Scenario<T>) -> Result<OutcomeDistribution<T>> {
    match scenario {
        Scenario::Honest => exact_honest_distribution(),
        Scenario::CheatingAlice(s) => exact_alice_distribution(s),
        Scenario::CheatingBob(s) => exact_bob_distribution(s),
    }
}

/// Exact win and abort probabilities of the deviating party aiming at
/// `target`. An honest scenario is reported from Alice's side.
pub fn exact_win_probability<T: Scalar>(
    scenario: &Scenario<T>,
    target: Bit,
) -> Result<BiasReport<T>> {
    let party = match scenario {
        Scenario::Honest | Scenario::CheatingAlice(_) => Party::Alice,
        Scenario::CheatingBob(_) => Party::Bob,
    };
    Ok(BiasReport::new(
        party,
        target,
        &exact_distribution(scenario)?,
    ))
}
