//! Check reports: a count of equations checked plus every failure found.

use std::fmt;

use serde::Serialize;

/// How much a passing report actually establishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Qualifier {
    Exact,
    /// Passing is a necessary condition for the property, not a proof.
    NecessaryOnly,
    /// Computed on connected components only.
    Pi0Surrogate,
}

impl fmt::Display for Qualifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qualifier::Exact => write!(f, "EXACT"),
            Qualifier::NecessaryOnly => write!(f, "NECESSARY-ONLY"),
            Qualifier::Pi0Surrogate => write!(f, "PI0-SURROGATE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub qualifier: Qualifier,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            qualifier: Qualifier::Exact,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_qualifier(mut self, q: Qualifier) -> Self {
        self.qualifier = q;
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one checked equation; the closures only run on failure.
    pub fn check(&mut self, ok: bool, check: impl FnOnce() -> String, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                check: check(),
                witness: witness(),
            });
        }
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.checked += 1;
        self.failures.push(Failure {
            check: check.into(),
            witness: witness.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report in, prefixing its failures with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.checked += other.checked;
        for f in other.failures {
            self.failures.push(Failure {
                check: format!("{prefix}: {}", f.check),
                witness: f.witness,
            });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "FAIL"
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.qualifier {
            Qualifier::Exact => String::new(),
            q => format!("{q}: "),
        };
        writeln!(
            f,
            "{}: {}{} ({} checks, {} failures)",
            self.title,
            q,
            self.verdict(),
            self.checked,
            self.failures.len()
        )?;
        for fl in &self.failures {
            writeln!(f, "  failed {}: {}", fl.check, fl.witness)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
