//! Clause-by-clause verification reports.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub clause: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Clause {
    pub fn new(clause: impl Into<String>, expected: impl Into<Value>, actual: impl Into<Value>, pass: bool) -> Self {
        Self {
            clause: clause.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        }
    }

    /// Passes when `actual == expected`.
    pub fn equal<T: Into<Value> + PartialEq + Clone>(clause: impl Into<String>, expected: T, actual: T) -> Self {
        let pass = expected == actual;
        Self::new(clause, expected, actual, pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub clauses: Vec<Clause>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            clauses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, clause: Clause) -> &mut Self {
        self.clauses.push(clause);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.check;
        self.clauses.extend(other.clauses.into_iter().map(|mut c| {
            c.clause = format!("{prefix}: {}", c.clause);
            c
        }));
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.check)?;
        let width = self.clauses.iter().map(|c| c.clause.len()).max().unwrap_or(0);
        for c in &self.clauses {
            writeln!(
                f,
                "{} {:width$}  expected {}  actual {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.clause,
                c.expected,
                c.actual,
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
