use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocol::{run_scenario, ProtocolOutcome};
use crate::qstate::Bit;
use crate::scalar::Scalar;
use crate::seed::split_seed;
use crate::strategies::Scenario;

/// Smallest trial count accepted by [`monte_carlo`].
pub const MIN_TRIALS: u64 = 1000;

/// Outcome counts of repeated independent runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MonteCarloReport {
    pub trials: u64,
    pub root_seed: u64,
    pub target: Option<Bit>,
    pub heads: u64,
    pub tails: u64,
    pub aborts: u64,
}

/// A sample frequency with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frequency {
    pub value: f64,
    pub standard_error: f64,
}

impl Frequency {
    fn of(count: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = count as f64 / n;
        Self {
            value: p,
            standard_error: (p * (1.0 - p) / n).sqrt(),
        }
    }

    /// `|value - exact|` in units of the standard error. Zero when both the
    /// deviation and the error vanish.
    pub fn z_score(&self, exact: f64) -> f64 {
        let dev = (self.value - exact).abs();
        if dev == 0.0 {
            0.0
        } else {
            dev / self.standard_error
        }
    }

    pub fn within_sigmas(&self, exact: f64, sigmas: f64) -> bool {
        self.z_score(exact) < sigmas
    }
}

impl MonteCarloReport {
    pub fn wins(&self) -> u64 {
        match self.target {
            Some(Bit::Zero) | None => self.heads,
            Some(Bit::One) => self.tails,
        }
    }

    pub fn heads_frequency(&self) -> Frequency {
        Frequency::of(self.heads, self.trials)
    }

    pub fn tails_frequency(&self) -> Frequency {
        Frequency::of(self.tails, self.trials)
    }

    pub fn abort_frequency(&self) -> Frequency {
        Frequency::of(self.aborts, self.trials)
    }

    /// Frequency of the target outcome (heads when there is no target).
    pub fn win_frequency(&self) -> Frequency {
        Frequency::of(self.wins(), self.trials)
    }

    fn merge(mut self, other: Self) -> Self {
        self.heads += other.heads;
        self.tails += other.tails;
        self.aborts += other.aborts;
        self.trials += other.trials;
        self
    }
}

/// Runs `trials` independent protocol executions; run `i` is seeded with
/// `split_seed(root_seed, i)`. Counts are summed, so the report does not
/// depend on how rayon schedules the work.
pub fn run_many<T: Scalar>(
    scenario: &Scenario<T>,
    target: Bit,
    trials: u64,
    root_seed: u64,
) -> Result<MonteCarloReport> {
    let empty = MonteCarloReport {
        root_seed,
        target: Some(target),
        ..Default::default()
    };
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let (outcome, _) = run_scenario(scenario, target, split_seed(root_seed, i))?;
            let mut one = MonteCarloReport { trials: 1, ..empty };
            match outcome {
                ProtocolOutcome::Heads => one.heads = 1,
                ProtocolOutcome::Tails => one.tails = 1,
                ProtocolOutcome::Abort => one.aborts = 1,
            }
            Ok(one)
        })
        .try_reduce(|| empty, |a, b| Ok(a.merge(b)))
}

/// [`run_many`] with at least [`MIN_TRIALS`] trials, for statistical
/// comparison against exact values.
pub fn monte_carlo<T: Scalar>(
    scenario: &Scenario<T>,
    target: Bit,
    trials: u64,
    root_seed: u64,
) -> Result<MonteCarloReport> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_TRIALS} trials required, got {trials}"
        )));
    }
    run_many(scenario, target, trials, root_seed)
}
