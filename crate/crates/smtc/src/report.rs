use serde::Serialize;
use std::fmt;

/// Maximum number of violations stored per report; further violations are
/// only counted.
pub const MAX_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub message: String,
    /// Absolute size of the mismatch, when the violation is numeric.
    pub deviation: Option<f64>,
}

/// Outcome of one consistency check. An empty report means the check passed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub violations: Vec<Violation>,
    /// Number of violations found, including those not stored.
    pub total: usize,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            violations: Vec::new(),
            total: 0,
        }
    }

    pub fn push(&mut self, message: impl Into<String>, deviation: Option<f64>) {
        self.total += 1;
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                message: message.into(),
                deviation,
            });
        }
    }

    pub fn mismatch(&mut self, message: impl Into<String>, deviation: f64) {
        self.push(message, Some(deviation));
    }

    pub fn passed(&self) -> bool {
        self.total == 0
    }

    pub fn merge(&mut self, other: Report) {
        for v in other.violations {
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(v);
            }
        }
        self.total += other.total;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: pass", self.check);
        }
        writeln!(f, "{}: {} violation(s)", self.check, self.total)?;
        for v in &self.violations {
            match v.deviation {
                Some(d) => writeln!(f, "  {} (|diff| = {:.3e})", v.message, d)?,
                None => writeln!(f, "  {}", v.message)?,
            }
        }
        if self.total > self.violations.len() {
            writeln!(f, "  ... {} more", self.total - self.violations.len())?;
        }
        Ok(())
    }
}
