//! Named scenarios: an input, an evaluator, a prediction and a sample
//! policy, run to a deterministic report.

mod quadric;
mod registry;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::transforms::Counterexample;

pub use quadric::{predicate as quadric_predicate, surrogate as quadric_surrogate};
pub use registry::{corpus, registry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a scenario evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Evaluator {
    Fs,
    Nhfs,
    Cone,
    Conv,
    Ttens,
    Tcomp,
    /// An exact set identity, sampled.
    Check,
}

impl Evaluator {
    pub fn as_str(self) -> &'static str {
        match self {
            Evaluator::Fs => "fs",
            Evaluator::Nhfs => "nhfs",
            Evaluator::Cone => "cone",
            Evaluator::Conv => "conv",
            Evaluator::Ttens => "ttens",
            Evaluator::Tcomp => "tcomp",
            Evaluator::Check => "check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub scenario: String,
    pub evaluator: Option<Evaluator>,
    pub status: Status,
    /// Points evaluated (up to and including a counterexample).
    pub samples: usize,
    pub seed: u64,
    pub negative_control: bool,
    pub counterexample: Option<Counterexample>,
    pub error: Option<String>,
}

impl Report {
    pub fn new(scenario: &str, seed: u64) -> Self {
        Report {
            scenario: scenario.into(),
            evaluator: None,
            status: Status::Error,
            samples: 0,
            seed,
            negative_control: false,
            counterexample: None,
            error: None,
        }
    }

    pub fn error(scenario: &str, seed: u64, message: String) -> Self {
        Report { error: Some(message), ..Self::new(scenario, seed) }
    }

    /// Whether the outcome is the intended one: PASS, or FAIL for a
    /// negative control.
    pub fn as_expected(&self) -> bool {
        match self.status {
            Status::Pass => !self.negative_control,
            Status::Fail => self.negative_control,
            Status::Error => false,
        }
    }
}

type Runner = Box<dyn Fn(u64, usize) -> Report + Send + Sync>;

pub struct Scenario {
    pub name: String,
    pub evaluator: Evaluator,
    pub negative_control: bool,
    /// What the scenario asserts, in words.
    pub notes: &'static str,
    run: Runner,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        evaluator: Evaluator,
        notes: &'static str,
        run: impl Fn(u64, usize) -> Report + Send + Sync + 'static,
    ) -> Self {
        Scenario { name: name.into(), evaluator, negative_control: false, notes, run: Box::new(run) }
    }

    pub fn negative(mut self) -> Self {
        self.negative_control = true;
        self
    }

    /// `random` is the number of seeded random points on top of the
    /// witnesses.
    pub fn run(&self, seed: u64, random: usize) -> Report {
        let mut r = (self.run)(seed, random);
        r.scenario = self.name.clone();
        r.evaluator = Some(self.evaluator);
        r.negative_control = self.negative_control;
        r
    }
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("evaluator", &self.evaluator)
            .field("negative_control", &self.negative_control)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scenario `{0}`")]
pub struct UnknownScenario(pub String);

pub fn scenario_names() -> Vec<String> {
    registry().into_iter().map(|s| s.name).collect()
}

pub fn run_scenario(name: &str, seed: u64, random: usize) -> Result<Report, UnknownScenario> {
    registry()
        .into_iter()
        .find(|s| s.name == name)
        .map(|s| s.run(seed, random))
        .ok_or_else(|| UnknownScenario(name.into()))
}

pub fn run_all_in(scenarios: &[Scenario], seed: u64, random: usize) -> Vec<Report> {
    scenarios.iter().map(|s| s.run(seed, random)).collect()
}

pub fn run_all(seed: u64, random: usize) -> Vec<Report> {
    run_all_in(&registry(), seed, random)
}

/// PASS iff every report is as intended.
pub fn aggregate(reports: &[Report]) -> Status {
    if reports.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if reports.iter().all(Report::as_expected) {
        Status::Pass
    } else {
        Status::Fail
    }
}
