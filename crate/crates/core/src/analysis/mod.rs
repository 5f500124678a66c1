//! Exact cheating probabilities, the bound optimizer, cheat-sensitivity scans
//! and Monte Carlo cross-checks.

mod exact;
mod montecarlo;
mod objective;
mod optimize;
mod phase;
pub mod report;
mod sensitivity;

pub use exact::{
    analytic_bound, exact_alice_distribution, exact_bob_distribution, exact_distribution,
    exact_honest_distribution, exact_win_probability, kitaev_reference, BiasReport,
    OutcomeDistribution,
};
pub use montecarlo::{monte_carlo, run_many, Frequency, MonteCarloReport, MIN_TRIALS};
pub use objective::{alice_fidelity_bound, alice_objective};
pub use optimize::{optimize_alice, OptimizationResult};
pub use phase::phase_sweep;
pub use sensitivity::{sensitivity_scan, SensitivityPoint};
