use std::fmt;
use std::str::FromStr;

use super::{
    coefficient_strategy, honest_alice, honest_bob, measure_and_pick_bob, optimal_alice,
    random_bob_strategy, AliceCheatStrategy, AliceCoefficients, BobCheatStrategy, PhiMode,
};
use crate::error::{Error, Result};
use crate::qstate::Bit;
use crate::scalar::Scalar;
use crate::seed::seeded_rng;

/// Who deviates from the protocol in a run, and how.
#[derive(Clone, Debug, PartialEq)]
pub enum Scenario<T> {
    Honest,
    CheatingAlice(AliceCheatStrategy<T>),
    CheatingBob(BobCheatStrategy<T>),
}

/// Strategy identifiers accepted on the command line:
/// `honest`, `optimal-alice`, `coefficients:<a00,a01,a10,a11>`,
/// `measure-and-pick`, `random-bob:<seed>`.
#[derive(Clone, Debug, PartialEq)]
pub enum StrategyId {
    Honest,
    OptimalAlice,
    Coefficients([f64; 4]),
    MeasureAndPick,
    RandomBob(u64),
}

impl StrategyId {
    /// Builds the scenario aimed at `target`.
    pub fn build<T: Scalar>(&self, target: Bit) -> Result<Scenario<T>> {
        Ok(match self {
            StrategyId::Honest => Scenario::Honest,
            StrategyId::OptimalAlice => Scenario::CheatingAlice(optimal_alice(target)),
            StrategyId::Coefficients(raw) => {
                let [a00, a01, a10, a11] = raw.map(T::lit);
                let c = AliceCoefficients::new(a00, a01, a10, a11)?;
                Scenario::CheatingAlice(coefficient_strategy(&c, PhiMode::Aligned)?)
            }
            StrategyId::MeasureAndPick => Scenario::CheatingBob(measure_and_pick_bob(target)),
            StrategyId::RandomBob(seed) => {
                Scenario::CheatingBob(random_bob_strategy(&mut seeded_rng(*seed)))
            }
        })
    }

    /// Alice-side strategy; `honest` maps to the honest preparation.
    pub fn alice<T: Scalar>(&self, target: Bit) -> Result<AliceCheatStrategy<T>> {
        match self.build(target)? {
            Scenario::Honest => Ok(honest_alice()),
            Scenario::CheatingAlice(s) => Ok(s),
            Scenario::CheatingBob(_) => Err(Error::InvalidArgument(format!(
                "`{self}` is a Bob strategy"
            ))),
        }
    }

    /// Bob-side strategy; `honest` maps to a fair-coin choice.
    pub fn bob<T: Scalar>(&self, target: Bit) -> Result<BobCheatStrategy<T>> {
        match self.build(target)? {
            Scenario::Honest => Ok(honest_bob()),
            Scenario::CheatingBob(s) => Ok(s),
            Scenario::CheatingAlice(_) => Err(Error::InvalidArgument(format!(
                "`{self}` is an Alice strategy"
            ))),
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyId::Honest => f.write_str("honest"),
            StrategyId::OptimalAlice => f.write_str("optimal-alice"),
            StrategyId::Coefficients(c) => {
                write!(f, "coefficients:{},{},{},{}", c[0], c[1], c[2], c[3])
            }
            StrategyId::MeasureAndPick => f.write_str("measure-and-pick"),
            StrategyId::RandomBob(seed) => write!(f, "random-bob:{seed}"),
        }
    }
}

/// Returned when a strategy identifier is not recognized.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown strategy `{0}`")]
pub struct UnknownStrategy(pub String);

impl FromStr for StrategyId {
    type Err = UnknownStrategy;
    fn from_str(s: &str) -> Result<Self, UnknownStrategy> {
        let unknown = || UnknownStrategy(s.to_string());
        match s {
            "honest" => return Ok(StrategyId::Honest),
            "optimal-alice" => return Ok(StrategyId::OptimalAlice),
            "measure-and-pick" => return Ok(StrategyId::MeasureAndPick),
            _ => {}
        }
        let (head, arg) = s.split_once(':').ok_or_else(unknown)?;
        match head {
            "coefficients" => {
                let parts: Vec<f64> = arg
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| unknown())?;
                let c: [f64; 4] = parts.try_into().map_err(|_| unknown())?;
                Ok(StrategyId::Coefficients(c))
            }
            "random-bob" => Ok(StrategyId::RandomBob(arg.parse().map_err(|_| unknown())?)),
            _ => Err(unknown()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_identifier() {
        assert_eq!("honest".parse::<StrategyId>().unwrap(), StrategyId::Honest);
        assert_eq!(
            "optimal-alice".parse::<StrategyId>().unwrap(),
            StrategyId::OptimalAlice
        );
        assert_eq!(
            "measure-and-pick".parse::<StrategyId>().unwrap(),
            StrategyId::MeasureAndPick
        );
        assert_eq!(
            "random-bob:42".parse::<StrategyId>().unwrap(),
            StrategyId::RandomBob(42)
        );
        assert_eq!(
            "coefficients:0.5,0.5,0.5,0.5"
                .parse::<StrategyId>()
                .unwrap(),
            StrategyId::Coefficients([0.5; 4])
        );
        for bad in [
            "",
            "dishonest",
            "coefficients:1,2",
            "coefficients:a,b,c,d",
            "random-bob:x",
        ] {
            assert!(bad.parse::<StrategyId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for id in [
            StrategyId::Honest,
            StrategyId::OptimalAlice,
            StrategyId::MeasureAndPick,
            StrategyId::RandomBob(7),
            StrategyId::Coefficients([0.5, 0.5, 0.5, 0.5]),
        ] {
            assert_eq!(id.to_string().parse::<StrategyId>().unwrap(), id);
        }
    }

    #[test]
    fn side_mismatch_is_an_error() {
        assert!(StrategyId::MeasureAndPick.alice::<f64>(Bit::Zero).is_err());
        assert!(StrategyId::OptimalAlice.bob::<f64>(Bit::Zero).is_err());
        assert!(StrategyId::Honest.alice::<f64>(Bit::Zero).is_ok());
        assert!(StrategyId::Coefficients([0.6, 0.8, 0.0, 0.1])
            .build::<f64>(Bit::Zero)
            .is_err());
    }
}
