//! The JSON report shared by all checking commands.

use std::collections::BTreeMap;
use std::time::Instant;

use arrangement_core::catalog::Arrangement;
use arrangement_core::engine::WitnessReport;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrangementSummary {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub conductor: u32,
    pub lines: usize,
    pub profile: BTreeMap<usize, usize>,
}

impl ArrangementSummary {
    pub fn new(a: &Arrangement, profile: BTreeMap<usize, usize>) -> Self {
        ArrangementSummary {
            name: a.provenance().name.clone(),
            params: a.provenance().params.clone(),
            conductor: a.field().conductor(),
            lines: a.len(),
            profile,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// Reported only; does not affect the overall status.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informative: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub arrangement: Option<ArrangementSummary>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub status: String,
    pub timings_ms: BTreeMap<String, u128>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            arrangement: None,
            checks: Vec::new(),
            witnesses: Vec::new(),
            details: None,
            status: "pass".into(),
            timings_ms: BTreeMap::new(),
        }
    }
}

impl Report {
    pub fn check(&mut self, name: &str, expected: impl ToString, actual: impl ToString) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
            informative: false,
        });
        pass
    }

    pub fn info(&mut self, name: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
            informative: true,
        });
    }

    pub fn push(&mut self, check: Check) {
        if !check.pass && !check.informative {
            self.status = "fail".into();
        }
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass && !c.informative)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Runs `f` and records its wall-clock time under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms.insert(name.to_string(), start.elapsed().as_millis());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with timings removed, for determinism comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().expect("object").remove("timings_ms");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}
