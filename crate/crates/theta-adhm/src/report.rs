//! Structured verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub degree_bound: Option<u32>,
    pub elapsed_ms: u64,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            degree_bound: None,
            elapsed_ms: 0,
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { status: Status::Skipped, ..Check::new(name, true, detail) }
    }

    pub fn with_bound(mut self, d: u32) -> Check {
        self.degree_bound = Some(d);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f` and records its verdict together with the wall time.
pub fn timed(name: &str, f: impl FnOnce() -> (bool, String)) -> Check {
    let t = Instant::now();
    let (ok, detail) = f();
    let mut c = Check::new(name, ok, detail);
    c.elapsed_ms = t.elapsed().as_millis() as u64;
    c
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub engine_version: String,
    pub config_echo: BTreeMap<String, String>,
    #[serde(skip)]
    pub budget_exhausted: bool,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
            engine_version: ENGINE_VERSION.into(),
            config_echo: BTreeMap::new(),
            budget_exhausted: false,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    /// Every check passed; skipped checks count as failures of coverage.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.checks.iter().map(|c| c.elapsed_ms).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable listing, one line per check.
    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} ({} checks)\n", self.suite, self.checks.len());
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let bound = c.degree_bound.map(|d| format!(" [deg<={d}]")).unwrap_or_default();
            s.push_str(&format!("  {tag} {}{bound} ({} ms) {}\n", c.name, c.elapsed_ms, c.detail));
        }
        s
    }
}

/// Shortens long expression text for check details.
pub fn brief(s: impl std::fmt::Display) -> String {
    let s = s.to_string();
    if s.chars().count() <= 160 {
        s
    } else {
        let head: String = s.chars().take(160).collect();
        format!("{head} …")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names_are_camel_case() {
        let mut r = Report::new("count");
        r.push(Check::new("k=1", true, "5").with_bound(2));
        r.config_echo.insert("k".into(), "1".into());
        let j = r.to_json();
        assert!(j.contains("\"engineVersion\""));
        assert!(j.contains("\"degreeBound\": 2"));
        assert!(j.contains("\"status\": \"pass\""));
        assert!(!j.contains("budget"));
    }
}
