//! Honest and adversarial behaviors for both parties.

mod alice;
mod bob;
mod named;

pub use alice::{
    coefficient_strategy, complex_coefficient_strategy, honest_alice, optimal_alice,
    random_alice_strategy, AliceCheatStrategy, AliceCoefficients, AliceResponse, PhiMode,
};
pub use bob::{
    constant_bob, honest_bob, measure_and_pick_bob, random_bob_strategy, AnnounceRule,
    BobCheatStrategy,
};
pub use named::{Scenario, StrategyId, UnknownStrategy};
