//! Verification report model shared by the CLI and the test suites.
//!
//! The `checks` array is fully determined by the run configuration and seed
//! (entries are sorted by name; residuals are deterministic). Timing data
//! and the timestamp live in the separate `metadata` block so two runs with
//! the same configuration serialize the body identically.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    /// short anchor naming the identity checked
    pub paper_anchor: String,
    pub tolerance: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub timestamp_utc: String,
    pub grid_order: usize,
    pub wall_times_ms: BTreeMap<String, f64>,
    /// measured-but-not-asserted observations (e.g. symmetry of the scale constant)
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub metadata: ReportMetadata,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            pass: true,
            checks: Vec::new(),
            metadata: ReportMetadata::default(),
        }
    }

    /// Run one named check, recording its wall time in the metadata block.
    pub fn run_check<F: FnOnce() -> crate::error::Result<f64>>(
        &mut self,
        name: &str,
        paper_anchor: &str,
        tolerance: f64,
        f: F,
    ) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (residual, pass) = match outcome {
            Ok(r) => (r, r.abs() < tolerance),
            Err(_) => (f64::NAN, false),
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            paper_anchor: paper_anchor.to_string(),
            tolerance,
            residual,
            pass,
        });
        self.metadata.wall_times_ms.insert(name.to_string(), elapsed);
    }

    pub fn note(&mut self, text: String) {
        self.metadata.notes.push(text);
    }

    /// Sort checks by name and set the aggregate flag.
    pub fn finalize(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.pass = self.checks.iter().all(|c| c.pass);
    }
}
