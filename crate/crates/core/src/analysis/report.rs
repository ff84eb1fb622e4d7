use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

/// Whether a report checks proven statements or only gathers evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Verification,
    Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub kind: ReportKind,
    pub total: usize,
    pub failures: Vec<Failure>,
    /// Deterministic summary statistics.
    pub summary: BTreeMap<String, String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.insert(key.to_string(), value.to_string());
    }
}

/// Accumulates cases and failures for one suite run.
pub struct ReportBuilder {
    report: VerificationReport,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(suite: &str, kind: ReportKind) -> Self {
        ReportBuilder {
            report: VerificationReport {
                suite: suite.to_string(),
                kind,
                total: 0,
                failures: Vec::new(),
                summary: BTreeMap::new(),
                wall_time: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    /// Records one case; `outcome` is `Err(detail)` on failure.
    pub fn case(&mut self, input: impl Into<String>, outcome: std::result::Result<(), String>) {
        self.report.total += 1;
        if let Err(detail) = outcome {
            self.report.failures.push(Failure { input: input.into(), detail });
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.report.note(key, value);
    }

    pub fn total(&self) -> usize {
        self.report.total
    }

    pub fn finish(mut self) -> VerificationReport {
        self.report.wall_time = self.start.elapsed();
        self.report
    }
}
