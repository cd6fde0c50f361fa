use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tables: {0}")]
    MalformedTables(String),
    #[error("cardinality overflow: {0} exceeds max_card {1}")]
    CardinalityOverflow(usize, usize),
    #[error("capability missing: {0}")]
    CapabilityMissing(&'static str),
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("enumeration budget exceeded: {needed} candidates against budget {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u128 },
    #[error("law violation: {0}")]
    LawViolation(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedTables(msg.into())
    }

    pub fn frame(msg: impl Into<String>) -> Self {
        Error::FrameMismatch(msg.into())
    }
}

/// One failed law together with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub at: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), violations: Vec::new() }
    }

    pub fn push(&mut self, law: impl Into<String>, at: &[usize], detail: impl Into<String>) {
        self.violations.push(Violation { law: law.into(), at: at.to_vec(), detail: detail.into() });
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            let law = if prefix.is_empty() { v.law } else { format!("{prefix}.{}", v.law) };
            self.violations.push(Violation { law, ..v });
        }
    }

    /// Names of the violated laws, deduplicated in first-seen order.
    pub fn laws(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.law) {
                out.push(v.law.clone());
            }
        }
        out
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::LawViolation(format!("{}: {} at {:?}", self.subject, v.law, v.at))),
        }
    }
}

/// Enumeration budget shared by every brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000)
    }
}

impl Budget {
    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 {
            Err(Error::EnumerationBudgetExceeded { needed, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Verdict of a bounded universality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Certified {
    #[serde(rename = "CERTIFIED")]
    Certified { budget: u128, checked: u64 },
    #[serde(rename = "REFUTED")]
    Refuted { budget: u128, reason: String },
}

impl Certified {
    pub fn holds(&self) -> bool {
        matches!(self, Certified::Certified { .. })
    }
}
