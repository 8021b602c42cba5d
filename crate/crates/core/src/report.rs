use serde::{Deserialize, Serialize};
use std::fmt;

/// A single structured counterexample: the violated law, the operands it was
/// evaluated on, and the expected-vs-actual outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: String,
    pub operands: Vec<String>,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}): expected {}, got {}",
            self.law,
            self.operands.join(", "),
            self.expected,
            self.actual
        )
    }
}

/// Outcome of one named check. `passed` holds exactly when the
/// counterexample list is empty; `notes` carries derived facts that were not
/// verified separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub counterexamples: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn builder(check: impl Into<String>) -> ReportBuilder {
        ReportBuilder {
            check: check.into(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Merges several reports into one, keeping every witness and note.
    pub fn merge(check: impl Into<String>, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut merged = CheckReport::builder(check);
        for part in parts {
            merged.counterexamples.extend(part.counterexamples);
            merged.notes.extend(part.notes);
        }
        merged.finish()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: pass", self.check)
        } else {
            write!(
                f,
                "{}: FAIL ({} counterexamples; first: {})",
                self.check,
                self.counterexamples.len(),
                self.counterexamples[0]
            )
        }
    }
}

pub struct ReportBuilder {
    check: String,
    counterexamples: Vec<Witness>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn fail<S: ToString>(
        &mut self,
        law: &str,
        operands: &[S],
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.counterexamples.push(Witness {
            law: law.to_owned(),
            operands: operands.iter().map(|o| o.to_string()).collect(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Records `actual == expected` and files a witness when it does not hold.
    pub fn expect_eq<T: PartialEq + ToString, S: ToString>(
        &mut self,
        law: &str,
        operands: &[S],
        expected: &T,
        actual: &T,
    ) {
        if expected != actual {
            self.fail(law, operands, expected.to_string(), actual.to_string());
        }
    }

    pub fn expect<S: ToString>(
        &mut self,
        condition: bool,
        law: &str,
        operands: &[S],
        expected: impl ToString,
        actual: impl ToString,
    ) {
        if !condition {
            self.fail(law, operands, expected, actual);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.counterexamples.extend(other.counterexamples);
        self.notes.extend(other.notes);
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check,
            passed: self.counterexamples.is_empty(),
            counterexamples: self.counterexamples,
            notes: self.notes,
        }
    }
}
