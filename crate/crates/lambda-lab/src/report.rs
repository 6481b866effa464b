//! Structured, machine-readable run reports for the CLI: one entry per
//! check with expected and observed values, so a failed assertion is
//! always accompanied by both sides.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub p: u64,
    pub checks: Vec<CheckEntry>,
    /// Informational lines (census, signs, lifts) that are data rather
    /// than pass/fail checks.
    pub notes: Vec<String>,
    pub timing_ms: u128,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, p: u64) -> Self {
        RunReport {
            command: command.to_string(),
            p,
            checks: Vec::new(),
            notes: Vec::new(),
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, expected: impl ToString, observed: impl ToString) {
        self.checks.push(CheckEntry {
            name: name.to_string(),
            passed,
            expected: expected.to_string(),
            observed: observed.to_string(),
        });
    }

    pub fn note(&mut self, line: impl ToString) {
        self.notes.push(line.to_string());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Plain-text rendering; identical invocations give byte-identical
    /// output except for the timing line.
    pub fn render_text(&self) -> String {
        let mut out = format!("{} p={} (lambda-lab v{})\n", self.command, self.p, self.version);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: expected {}, observed {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.observed
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  {n}\n"));
        }
        out.push_str(&format!(
            "  result: {}\n  timing: {} ms\n",
            if self.all_passed() { "PASS" } else { "FAIL" },
            self.timing_ms
        ));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
