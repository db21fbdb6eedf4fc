//! Pass/fail tallies shared by the theorem checkers, the CLI and the suite.

use serde::Serialize;
use std::fmt;

/// One law checked over many instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Law {
    pub name: String,
    /// Instances examined.
    pub checked: u64,
    /// Instances decided without evaluating the formula (for example a zero
    /// lower bound).
    pub trivial: u64,
    pub failures: u64,
    /// The law is expected to fail on at least one instance.
    pub expect_failure: bool,
    /// First failing instance, rendered.
    pub example: Option<String>,
}

impl Law {
    pub fn new(name: impl Into<String>) -> Self {
        Law { name: name.into(), checked: 0, trivial: 0, failures: 0, expect_failure: false, example: None }
    }

    pub fn expecting_failure(mut self, yes: bool) -> Self {
        self.expect_failure = yes;
        self
    }

    /// Records one instance; `example` renders it only on the first failure.
    pub fn record(&mut self, holds: bool, example: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !holds {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
        holds
    }

    pub fn record_trivial(&mut self, n: u64) {
        self.checked += n;
        self.trivial += n;
    }

    pub fn ok(&self) -> bool {
        if self.expect_failure {
            self.failures > 0
        } else {
            self.failures == 0
        }
    }

    pub fn status(&self) -> &'static str {
        match (self.ok(), self.expect_failure) {
            (true, false) => "holds",
            (true, true) => "fails as expected",
            (false, false) => "VIOLATED",
            (false, true) => "NO VIOLATION FOUND",
        }
    }
}

/// A titled group of laws with free-form notes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub laws: Vec<Law>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), laws: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, law: Law) {
        self.laws.push(law);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn ok(&self) -> bool {
        self.laws.iter().all(Law::ok)
    }

    pub fn law(&self, name: &str) -> Option<&Law> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn law_mut(&mut self, name: &str) -> Option<&mut Law> {
        self.laws.iter_mut().find(|l| l.name == name)
    }

    pub fn merge(&mut self, other: Report) {
        self.laws.extend(other.laws);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        let w = self.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for l in &self.laws {
            write!(f, "  {:<w$}  {:>10} checked  {:>8} failed  {}", l.name, l.checked, l.failures, l.status())?;
            if l.trivial > 0 {
                write!(f, "  ({} decided by a zero bound)", l.trivial)?;
            }
            writeln!(f)?;
            if let Some(e) = &l.example {
                writeln!(f, "  {:<w$}    e.g. {e}", "")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
