//! The JSON report envelope shared by every subcommand.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub git: &'static str,
}

impl Provenance {
    pub fn current() -> Self {
        Provenance { version: env!("CARGO_PKG_VERSION"), git: env!("MONOFORGE_GIT_HASH") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub passes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub provenance: Provenance,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report { command: command.into(), config, provenance: Provenance::current(), checks: Vec::new(), result: Value::Null }
    }

    pub fn check(&mut self, id: impl Into<String>, passes: bool) -> &mut Self {
        self.checks.push(Check { id: id.into(), passes, detail: None });
        self
    }

    pub fn check_with(&mut self, id: impl Into<String>, passes: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check { id: id.into(), passes, detail: Some(detail.into()) });
        self
    }

    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, for the terminal.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.passes { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) => s.push_str(&format!("[{tag}] {}: {d}\n", c.id)),
                None => s.push_str(&format!("[{tag}] {}\n", c.id)),
            }
        }
        if self.checks.is_empty() {
            s.push_str(&format!("{}: no checks\n", self.command));
        }
        s
    }
}
