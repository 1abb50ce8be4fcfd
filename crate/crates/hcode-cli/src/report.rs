//! The machine-readable report emitted by every subcommand.
//!
//! The schema is stable across commands: command name, inputs, results,
//! checks (each with expected value, observed value and tolerance), tool
//! versions, and wall time. Identical inputs produce byte-identical JSON
//! except for the wall_time_ms field.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use hcode::checks::CheckResult;

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub versions: BTreeMap<String, String>,
    pub wall_time_ms: u128,
    #[serde(skip)]
    started: Instant,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut versions = BTreeMap::new();
        versions.insert("hcode".to_string(), env!("CARGO_PKG_VERSION").to_string());
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: serde_json::Value::Null,
            checks: Vec::new(),
            versions,
            wall_time_ms: 0,
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, key: &str, value: serde_json::Value) {
        self.inputs.insert(key.to_string(), value);
    }

    pub fn results(&mut self, value: serde_json::Value) {
        self.results = value;
    }

    pub fn check(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    /// Finalize the wall time and write the JSON report if requested
    /// ("-" writes to stdout).
    pub fn render(mut self, json_target: Option<&str>) {
        self.wall_time_ms = self.started.elapsed().as_millis();
        let Some(target) = json_target else { return };
        let text = serde_json::to_string_pretty(&self).expect("report serializes");
        if target == "-" {
            println!("{text}");
        } else if let Err(e) = std::fs::write(target, text) {
            eprintln!("warning: cannot write JSON report to {target}: {e}");
        }
    }
}
