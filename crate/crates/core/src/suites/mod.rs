//! Seeded agreement suites: each cross-checks independent implementations of
//! the same property over a generated corpus and reports the tally.

mod algebra;
mod compiler;
mod logic;
mod precision;
mod sampler;

use std::time::Instant;

use serde::Serialize;

use crate::algebra::DEFAULT_ELEMENT_BUDGET;
use crate::{Error, Result};

pub use compiler::compiler_formulas;

pub const SUITE_NAMES: [&str; 9] = [
    "thm1",
    "thm2",
    "benchmarks",
    "ltl-to-dfa",
    "thm3",
    "mod",
    "compiler",
    "precision",
    "sampler",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Corpus size for randomized suites; each suite has its own default.
    pub trials: Option<usize>,
    pub seed: u64,
    pub element_budget: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            trials: None,
            seed: 7,
            element_budget: DEFAULT_ELEMENT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

pub(crate) fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "thm1" => algebra::definiteness(opts)?,
        "thm2" => algebra::local_r_triviality(opts)?,
        "benchmarks" => algebra::benchmarks(opts)?,
        "ltl-to-dfa" => logic::ltl_to_dfa(opts)?,
        "thm3" => logic::local_testability(opts)?,
        "mod" => logic::modular(opts)?,
        "compiler" => compiler::compiler(opts)?,
        "precision" => precision::precision(opts)?,
        "sampler" => sampler::sampler(opts)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected one of {})",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_owned(),
        seed: opts.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
