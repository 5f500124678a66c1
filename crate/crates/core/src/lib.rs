//! Simulation and cheating analysis for an entanglement-based strong coin
//! tossing protocol with bias 1/4.
//!
//! Alice prepares two Bell pairs and hands Bob one half of each. Bob picks
//! one pair for the coin, both parties measure it, and Alice returns her half
//! of the other pair so Bob can check it against the Bell state.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*F64` and
//! `*F32` aliases below fix the precision.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod protocol;
pub mod qstate;
pub mod scalar;
pub mod seed;
pub mod strategies;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type StateVectorF64 = qstate::StateVector<f64>;
pub type StateVectorF32 = qstate::StateVector<f32>;
pub type LocalOpF64 = qstate::LocalOp<f64>;
pub type AliceCheatStrategyF64 = strategies::AliceCheatStrategy<f64>;
pub type AliceCheatStrategyF32 = strategies::AliceCheatStrategy<f32>;
pub type BobCheatStrategyF64 = strategies::BobCheatStrategy<f64>;
pub type BobCheatStrategyF32 = strategies::BobCheatStrategy<f32>;
pub type ScenarioF64 = strategies::Scenario<f64>;
pub type AliceCoefficientsF64 = strategies::AliceCoefficients<f64>;
pub type AliceCoefficientsF32 = strategies::AliceCoefficients<f32>;
pub type BiasReportF64 = analysis::BiasReport<f64>;
pub type BiasReportF32 = analysis::BiasReport<f32>;
pub type OptimizationResultF64 = analysis::OptimizationResult<f64>;
