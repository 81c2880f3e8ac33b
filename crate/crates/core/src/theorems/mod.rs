//! Executable verification suites for the toolkit's theorem statements,
//! constructions, and table fixtures. Suites aggregate per-cell verdicts;
//! a failing cell always carries a reproducible counterexample.

mod bounds;
mod families;
mod sturmian;

pub use bounds::{
    check_profile_factor_bound, check_span_factor_bound, check_ultimately_periodic,
    morphism_bounds_suite, morphism_image_attractor, oracle_equivalence_suite,
    profile_factor_bound_suite, span_factor_bound_suite, MorphismBounds,
};
pub use families::{
    check_holub_attractors, check_period_doubling_span, check_quasi_sturmian,
    detect_quasi_sturmian, quasi_sturmian_suite, run_figure1_suite, QuasiExpectation, QuasiReport,
};
pub use sturmian::{
    check_noncharacteristic_remark, sturmian_gamma_formula, sturmian_theorem_suite,
    verify_sturmian_theorem, GammaCase, SturmianGammaWitness,
};

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

/// Reproduction recipe for a failing cell: generator spec plus prefix length.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: String,
    /// What was checked: word families and ranges.
    pub universe: String,
    pub verdict: Verdict,
    pub cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub(crate) fn new(suite: impl Into<String>, universe: impl Into<String>) -> Self {
        CheckResult {
            suite: suite.into(),
            universe: universe.into(),
            verdict: Verdict::Pass,
            cells: Vec::new(),
            counterexample: None,
        }
    }

    pub(crate) fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.cells.push(Cell {
            name: name.into(),
            verdict: Verdict::Pass,
            detail: detail.into(),
        });
    }

    pub(crate) fn vacuous(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.cells.push(Cell {
            name: name.into(),
            verdict: Verdict::Vacuous,
            detail: detail.into(),
        });
    }

    pub(crate) fn fail(
        &mut self,
        name: impl Into<String>,
        detail: impl Into<String>,
        counterexample: Counterexample,
    ) {
        self.cells.push(Cell {
            name: name.into(),
            verdict: Verdict::Fail,
            detail: detail.into(),
        });
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    /// Overall verdict: fail dominates, then vacuous, then pass.
    pub(crate) fn finish(mut self) -> Self {
        let any_fail = self.cells.iter().any(|c| c.verdict == Verdict::Fail);
        let any_vac = self.cells.iter().any(|c| c.verdict == Verdict::Vacuous);
        self.verdict = if any_fail {
            Verdict::Fail
        } else if any_vac {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Options shared by the named suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Randomized-universe size (words or triples), where applicable.
    pub count: usize,
    /// Range cap for per-prefix scans, where applicable.
    pub n_max: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            count: 200,
            n_max: None,
        }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "figure1",
    "sturmian",
    "period-doubling",
    "holub",
    "morphism-bounds",
    "span-factor-bound",
    "profile-factor-bound",
    "noncharacteristic",
    "quasi-sturmian",
    "oracle",
];

/// Runs a named suite with the given options.
pub fn run_suite(name: &str, opts: &SuiteOptions, cfg: &Config) -> Result<CheckResult> {
    match name {
        "figure1" => Ok(run_figure1_suite(cfg)),
        "sturmian" => Ok(sturmian_theorem_suite(opts.n_max.unwrap_or(500), opts.seed, cfg)),
        "period-doubling" => Ok(check_period_doubling_span(opts.n_max.unwrap_or(192), cfg)),
        "holub" => Ok(check_holub_attractors(None, 3, cfg)),
        "morphism-bounds" => Ok(morphism_bounds_suite(opts.seed, opts.count.min(1000), cfg)),
        "span-factor-bound" => Ok(bounds::span_factor_bound_suite(opts.seed, opts.count, cfg)),
        "profile-factor-bound" => Ok(bounds::profile_factor_bound_suite(cfg)),
        "noncharacteristic" => Ok(check_noncharacteristic_remark(cfg)),
        "quasi-sturmian" => Ok(families::quasi_sturmian_suite(cfg)),
        "oracle" => Ok(oracle_equivalence_suite(opts.seed, opts.count, cfg)),
        other => Err(Error::SpecParse {
            at: other.to_string(),
            why: format!("unknown suite; known: {}", SUITE_NAMES.join(", ")),
        }),
    }
}
