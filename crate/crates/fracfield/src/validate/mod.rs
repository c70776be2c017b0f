//! Runnable invariant suites. Each suite re-checks the mathematical
//! contracts of one module at desk scale and reports measured values, so a
//! release can be gated on `validate all`. Reports carry no wall-clock
//! data: identical seeds give byte-identical reports.

mod fields_suite;
mod manifold_suite;
mod solver_suite;
mod specfun_suite;
mod subordinate_suite;

use serde::Serialize;

use crate::error::{Error, Result};

/// One invariant check: a measured statistic against its bound.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// The measured statistic (max deviation, z-score, fitted order, ...).
    pub measured: f64,
    /// The bound the statistic was held against.
    pub bound: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            checks: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    /// `measured <= bound` check.
    fn check_upper(&mut self, name: &str, measured: f64, bound: f64, detail: impl Into<String>) {
        self.push(Check {
            name: name.to_string(),
            passed: measured <= bound,
            measured,
            bound,
            detail: detail.into(),
        });
    }

    /// `measured >= bound` check.
    fn check_lower(&mut self, name: &str, measured: f64, bound: f64, detail: impl Into<String>) {
        self.push(Check {
            name: name.to_string(),
            passed: measured >= bound,
            measured,
            bound,
            detail: detail.into(),
        });
    }

    fn push(&mut self, check: Check) {
        if check.passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(check);
    }

    fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub const SUITES: &[&str] = &[
    "specfun",
    "subordinate",
    "manifold",
    "solver",
    "fields",
    "all",
];

/// Run one named suite (or `all`) with the given seed.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "specfun" => specfun_suite::run(seed),
        "subordinate" => subordinate_suite::run(seed),
        "manifold" => manifold_suite::run(seed),
        "solver" => solver_suite::run(seed),
        "fields" => fields_suite::run(seed),
        "all" => {
            let mut report = SuiteReport::new("all", seed);
            for s in &["specfun", "subordinate", "manifold", "solver", "fields"] {
                report.absorb(run_suite(s, seed)?);
            }
            Ok(report)
        }
        other => Err(Error::parameter(format!(
            "unknown suite '{other}'; expected one of {SUITES:?}"
        ))),
    }
}
