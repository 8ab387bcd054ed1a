use serde::{Deserialize, Serialize};

/// Maximum number of counterexamples kept per report.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Index tuple or basis element that failed.
    pub case: String,
    /// Nonzero residual entries, rendered exactly.
    pub residual: Vec<String>,
}

/// Outcome of an exact identity sweep. `passed` iff every residual was
/// exactly zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub description: String,
    pub cases_checked: usize,
    pub failure_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, description: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            cases_checked: 0,
            failure_count: 0,
            counterexamples: Vec::new(),
            passed: true,
        notes: Vec::new(),
        }
    }

    /// Records one case; `residual` is empty when the case passed.
    pub fn record(&mut self, case: impl FnOnce() -> String, residual: Vec<String>) {
        self.cases_checked += 1;
        if residual.is_empty() {
            return;
        }
        self.failure_count += 1;
        self.passed = false;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample { case: case(), residual });
        }
    }

    pub fn check(&mut self, case: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> Vec<String>) {
        if ok {
            self.record(case, Vec::new());
        } else {
            let mut d = detail();
            if d.is_empty() {
                d.push("nonzero".into());
            }
            self.record(case, d);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Folds another report's cases into this one.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.cases_checked += other.cases_checked;
        self.failure_count += other.failure_count;
        self.passed &= other.passed;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
        self.notes.extend(other.notes);
    }
}

/// Renders the nonzero entries of an exact residual matrix.
pub fn matrix_residual(m: &crate::ExactMatrix) -> Vec<String> {
    m.nonzero_entries()
        .into_iter()
        .map(|(i, j, v)| format!("({},{}) = {}", i + 1, j + 1, crate::scalar::fmt_gaussian(&v)))
        .collect()
}
