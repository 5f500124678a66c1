//! Command-line front end.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::analysis::report::{prob, scan_table, Report, Section};
use crate::analysis::{
    exact_distribution, exact_win_probability, monte_carlo, optimize_alice, run_many,
    sensitivity_scan, MIN_TRIALS,
};
use crate::error::Error;
use crate::protocol::run_scenario;
use crate::qstate::Bit;
use crate::strategies::{Scenario, StrategyId, UnknownStrategy};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  output could not be written
  2  invalid arguments
  3  unknown strategy (or a strategy for the wrong party)
  4  internal invariant violation";

/// Refinement tolerance used by `optimize`.
pub const REFINEMENT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Both parties honest; runs the protocol `--trials` times.
    Honest,
    /// Alice cheats with `--strategy` against an honest Bob.
    CheatAlice,
    /// Bob cheats with `--strategy` against an honest Alice.
    CheatBob,
    /// Exact win/abort probabilities of a strategy.
    Bias,
    /// Maximize Alice's success ceiling over her coefficients.
    Optimize,
    /// Cheat-sensitivity scan from honest to optimal coefficients.
    Scan,
    /// Monte Carlo estimate compared against the exact values.
    Montecarlo,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Honest => "honest",
            Command::CheatAlice => "cheat-alice",
            Command::CheatBob => "cheat-bob",
            Command::Bias => "bias",
            Command::Optimize => "optimize",
            Command::Scan => "scan",
            Command::Montecarlo => "montecarlo",
        }
    }

    fn default_strategy(self) -> &'static str {
        match self {
            Command::CheatAlice | Command::Bias => "optimal-alice",
            Command::CheatBob => "measure-and-pick",
            _ => "honest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Structured,
    Tabular,
}

/// Simulator and cheating analysis for the two-Bell-pair coin tossing protocol.
#[derive(Clone, Debug, Parser)]
#[command(name = "cointoss", version, after_help = EXIT_CODES)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// honest | optimal-alice | coefficients:<a00,a01,a10,a11> |
    /// measure-and-pick | random-bob:<seed>
    #[arg(long)]
    pub strategy: Option<String>,
    /// Outcome the cheating party aims for.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub target: u8,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, env = "COINTOSS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub grid_resolution: usize,
    /// Number of points on the scan path.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Structured)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    UnknownStrategy(#[from] UnknownStrategy),
    #[error("{0}")]
    Invariant(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::UnknownStrategy(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl RunConfig {
    pub fn strategy_text(&self) -> &str {
        self.strategy
            .as_deref()
            .unwrap_or(self.command.default_strategy())
    }

    pub fn target_bit(&self) -> Bit {
        Bit::from_u8(self.target).expect("clap restricts target to 0..=1")
    }

    fn validate(&self) -> Result<StrategyId, CliError> {
        if self.command == Command::Montecarlo && self.trials < MIN_TRIALS {
            return Err(CliError::Parse(format!(
                "montecarlo needs --trials >= {MIN_TRIALS}"
            )));
        }
        if self.command == Command::Optimize && self.grid_resolution < 20 {
            return Err(CliError::Parse(
                "--grid-resolution must be at least 20".into(),
            ));
        }
        if self.command == Command::Scan && self.steps < 2 {
            return Err(CliError::Parse("--steps must be at least 2".into()));
        }
        let id: StrategyId = self.strategy_text().parse()?;
        if self.command == Command::Honest && id != StrategyId::Honest {
            return Err(CliError::Parse(
                "the honest command takes no cheating strategy".into(),
            ));
        }
        Ok(id)
    }

    fn config_section(&self) -> Section {
        let mut s = Section::new("config");
        s.push("command", self.command.name())
            .push("strategy", self.strategy_text())
            .push("target", self.target)
            .push("trials", self.trials)
            .push("seed", self.seed)
            .push("grid_resolution", self.grid_resolution)
            .push("steps", self.steps)
            .push(
                "format",
                match self.format {
                    OutputFormat::Structured => "structured",
                    OutputFormat::Tabular => "tabular",
                },
            )
            .push(
                "out",
                self.out
                    .as_ref()
                    .map_or("-".to_string(), |p| p.display().to_string()),
            );
        s
    }
}

fn scenario_for(config: &RunConfig, id: &StrategyId) -> Result<Scenario<f64>, CliError> {
    let target = config.target_bit();
    let wrong_side = |e: Error| match e {
        Error::InvalidArgument(msg) => CliError::UnknownStrategy(UnknownStrategy(msg)),
        other => CliError::Parse(other.to_string()),
    };
    Ok(match config.command {
        Command::CheatAlice => Scenario::CheatingAlice(id.alice(target).map_err(wrong_side)?),
        Command::CheatBob => Scenario::CheatingBob(id.bob(target).map_err(wrong_side)?),
        _ => id
            .build(target)
            .map_err(|e| CliError::Parse(e.to_string()))?,
    })
}

fn bounds_section() -> Section {
    let mut s = Section::new("reference");
    s.push(
        "analytic_bound",
        prob(crate::analysis::analytic_bound::<f64>()),
    )
    .push(
        "kitaev_reference",
        prob(crate::analysis::kitaev_reference::<f64>()),
    );
    s
}

/// Runs the command and returns the report; nothing is written.
pub fn dispatch(config: &RunConfig) -> Result<Report, CliError> {
    let id = config.validate()?;
    let target = config.target_bit();
    let mut report = Report {
        sections: vec![config.config_section()],
        table: None,
    };

    match config.command {
        Command::Honest | Command::CheatAlice | Command::CheatBob => {
            let scenario = scenario_for(config, &id)?;
            let tally = run_many(&scenario, target, config.trials, config.seed)?;
            let mut summary = tally.to_section();
            summary.name = "summary".into();
            report.sections.push(summary);

            let exact = exact_win_probability(&scenario, target)?;
            let mut exact_section = exact.to_section();
            exact_section.name = "exact".into();
            report.sections.push(exact_section);

            let (_, transcript) =
                run_scenario(&scenario, target, crate::seed::split_seed(config.seed, 0))?;
            let mut t = Section::new("transcript");
            for (i, line) in transcript.to_text().lines().skip(1).enumerate() {
                t.push(&format!("line_{i}"), line);
            }
            report.sections.push(t);
        }
        Command::Bias => {
            let scenario = scenario_for(config, &id)?;
            let r = exact_win_probability(&scenario, target)?;
            if !r.respects_bound() {
                return Err(CliError::Invariant(format!(
                    "exact win probability {} exceeds the analytic bound",
                    r.p_win_exact
                )));
            }
            report.sections.push(r.to_section());
        }
        Command::Optimize => {
            let r = optimize_alice::<f64>(config.grid_resolution, REFINEMENT_TOLERANCE)?;
            report.sections.push(r.to_section());
            report.sections.push(bounds_section());
            report.table = Some(r.to_table());
        }
        Command::Scan => {
            let points = sensitivity_scan::<f64>(config.steps)?;
            let detect_when_cheating = points
                .iter()
                .filter(|p| p.p_win > 0.5 + 1e-6)
                .all(|p| p.p_detect > 0.0);
            let mut s = Section::new("result");
            s.push("points", points.len())
                .push("cheating_always_detectable", detect_when_cheating);
            report.sections.push(s);
            report.sections.push(bounds_section());
            report.table = Some(scan_table(&points));
        }
        Command::Montecarlo => {
            let scenario = scenario_for(config, &id)?;
            let mc = monte_carlo(&scenario, target, config.trials, config.seed)?;
            let exact = exact_distribution(&scenario)?;
            let bias = exact_win_probability(&scenario, target)?;
            report.sections.push(mc.to_section());
            let mut s = bias.to_section();
            s.name = "exact".into();
            s.push(
                "win_z_score",
                prob(mc.win_frequency().z_score(exact.of_bit(target))),
            )
            .push(
                "abort_z_score",
                prob(mc.abort_frequency().z_score(exact.abort)),
            );
            report.sections.push(s);
            report.table = Some(mc.to_table());
        }
    }
    Ok(report)
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Structured => report.to_structured(),
        OutputFormat::Tabular => report.to_tabular(),
    }
}

/// Dispatches and writes the rendered report to `--out` or standard output.
pub fn execute(config: &RunConfig) -> Result<String, CliError> {
    let text = render(&dispatch(config)?, config.format);
    match &config.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(text)
}

/// Process entry point; returns the exit status.
pub fn main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&config) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
