//! Deterministic verification reports. Serialization must be byte-identical
//! across reruns with the same configuration, so everything is ordered and
//! nothing time- or environment-dependent is recorded.

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
    pub genericity_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    /// Instances exercised.
    pub samples: usize,
    /// Individual assertions evaluated.
    pub checks: usize,
    pub failures: Vec<FailureReport>,
    pub genericity_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureReport {
    pub check: String,
    pub witness: String,
    pub replay: String,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            passed: true,
            samples: 0,
            checks: 0,
            failures: Vec::new(),
            genericity_failures: 0,
        }
    }

    /// Records one assertion; on failure stores the witness and a replay
    /// command.
    pub fn check(&mut self, ok: bool, check: &str, witness: impl Fn() -> String, replay: &str) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(FailureReport {
                check: check.to_string(),
                witness: witness(),
                replay: replay.to_string(),
            });
        }
    }

    pub fn genericity_failure(&mut self, witness: String, replay: &str) {
        self.passed = false;
        self.genericity_failures += 1;
        self.failures.push(FailureReport {
            check: "genericity".into(),
            witness,
            replay: replay.to_string(),
        });
    }
}

impl VerifyReport {
    pub fn new(config: RunConfig, suites: Vec<SuiteReport>) -> Self {
        let all_passed = suites.iter().all(|s| s.passed);
        let genericity_failures = suites.iter().map(|s| s.genericity_failures).sum();
        VerifyReport {
            config,
            suites,
            all_passed,
            genericity_failures,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Process exit code: 0 pass, 2 verification failure, 3 genericity
    /// failure.
    pub fn exit_code(&self) -> i32 {
        if self.genericity_failures > 0 {
            3
        } else if !self.all_passed {
            2
        } else {
            0
        }
    }
}
