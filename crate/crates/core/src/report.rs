use std::fmt;

use serde::{Deserialize, Serialize};

/// One named check inside a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample pairs, by label.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    /// Sizes and other facts about the objects built, e.g. `("|K|", "4")`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
            facts: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witnesses: Vec::new(),
            detail: None,
        });
        self
    }

    /// A check that passes iff `witnesses` is empty.
    pub fn check_witnesses(&mut self, name: impl Into<String>, witnesses: Vec<(String, String)>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed: witnesses.is_empty(),
            witnesses,
            detail: None,
        });
        self
    }

    pub fn fail_with(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witnesses: Vec::new(),
            detail: Some(detail.into()),
        });
        self
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.facts.push((key.into(), value.to_string()));
        self
    }

    pub fn fact_value(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// True iff every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    /// `PASS subject: 5/5 checks, |K| = 4`, followed by one line per failed check.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "{} {}: {}/{} checks",
            if self.passed() { "PASS" } else { "FAIL" },
            self.subject,
            ok,
            self.checks.len()
        )?;
        for (k, v) in &self.facts {
            write!(f, ", {k} = {v}")?;
        }
        for c in self.failures() {
            write!(f, "\n  failed: {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            if !c.witnesses.is_empty() {
                let shown: Vec<String> = c.witnesses.iter().map(|(a, b)| format!("({a},{b})")).collect();
                write!(f, " witnesses: {}", shown.join(" "))?;
            }
        }
        Ok(())
    }
}
