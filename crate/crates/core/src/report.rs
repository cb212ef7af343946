//! Pass/fail check reports shared by every validator.

use std::fmt;

/// One failing instance, located by basis indices (pair, triple, tuple...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: Vec<usize>,
    pub message: String,
}

impl Violation {
    pub fn new(location: Vec<usize>, message: impl Into<String>) -> Self {
        Violation {
            location,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, location: Vec<usize>, message: impl Into<String>) {
        self.violations.push(Violation::new(location, message));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note(note);
        self
    }

    /// First violation whose location, as a set, contains every index in `indices`.
    pub fn locates(&self, indices: &[usize]) -> bool {
        self.violations
            .iter()
            .any(|v| indices.iter().all(|i| v.location.contains(i)))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass", self.name)
        } else {
            write!(f, "{}: FAIL ({} violations", self.name, self.violations.len())?;
            if let Some(v) = self.violations.first() {
                write!(f, "; first at {:?}: {}", v.location, v.message)?;
            }
            write!(f, ")")
        }
    }
}

/// A list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
