//! Law-by-law reports produced by the axiom checkers.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    /// Number of instances evaluated.
    pub checked: usize,
    pub outcome: Outcome,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail { .. })
    }

    pub fn witness(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub seed: Option<u64>,
    /// True when every quantified instance was enumerated.
    pub exhaustive: bool,
    pub results: Vec<LawResult>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>, seed: Option<u64>) -> Self {
        CheckReport {
            subject: subject.into(),
            seed,
            exhaustive: false,
            results: Vec::new(),
        }
    }

    fn entry(&mut self, law: &str) -> &mut LawResult {
        let pos = match self.results.iter().position(|r| r.law == law) {
            Some(p) => p,
            None => {
                self.results.push(LawResult {
                    law: law.to_string(),
                    checked: 0,
                    outcome: Outcome::Pass,
                });
                self.results.len() - 1
            }
        };
        &mut self.results[pos]
    }

    /// Declares a law so it appears in the report even if never exercised.
    pub fn declare(&mut self, law: &str) {
        self.entry(law);
    }

    /// Records one instance of `law`. Only the first failing witness is kept,
    /// and the witness closure runs only on failure.
    pub fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        let e = self.entry(law);
        e.checked += 1;
        if !ok && e.outcome == Outcome::Pass {
            e.outcome = Outcome::Fail { witness: witness() };
        }
    }

    pub fn not_applicable(&mut self, law: &str, reason: impl Into<String>) {
        let e = self.entry(law);
        e.outcome = Outcome::NotApplicable {
            reason: reason.into(),
        };
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {}", self.subject)?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        writeln!(f, " {}", if self.exhaustive { "exhaustive" } else { "sampled" })?;
        for r in &self.results {
            match &r.outcome {
                Outcome::Pass => writeln!(f, "  {:<28} pass ({} cases)", r.law, r.checked)?,
                Outcome::Fail { witness } => {
                    writeln!(f, "  {:<28} FAIL witness: {}", r.law, witness)?
                }
                Outcome::NotApplicable { reason } => {
                    writeln!(f, "  {:<28} n/a ({})", r.law, reason)?
                }
            }
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}
