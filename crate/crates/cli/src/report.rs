//! Command output. Every command fills a [`Report`]; text mode prints its
//! lines followed by one line per check, JSON mode serializes it whole.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub entity: String,
    pub check: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub data: serde_json::Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            checks: Vec::new(),
            data: serde_json::Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, entity: impl Into<String>, check: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            entity: entity.into(),
            check: check.into(),
            passed,
            witness: witness.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                for c in &self.checks {
                    let verdict = if c.passed { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{verdict} {} [{}]: {}\n", c.check, c.entity, c.witness));
                }
                out
            }
        }
    }
}
