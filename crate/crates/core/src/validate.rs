use std::fmt;

use serde::Serialize;

/// One broken invariant. `location` says where (e.g. `node v1, atom 2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub rule: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, rule: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.rule)
        } else {
            write!(f, "{}: {}", self.location, self.rule)
        }
    }
}

/// Result of [`crate::validate_model`]. Violations are data, not faults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Appends `inner` violations, prefixing their locations with `prefix`.
    pub fn extend_at(&mut self, prefix: &str, inner: Vec<Violation>) {
        for mut v in inner {
            v.location = if v.location.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}, {}", v.location)
            };
            self.violations.push(v);
        }
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
