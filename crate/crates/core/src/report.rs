//! Pass/fail bookkeeping shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { id: id.into(), status: Status::Fail, witness: Some(witness.into()) });
    }

    /// Record a check whose outcome is `Ok(())` or a failure witness.
    pub fn record(&mut self, id: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(id),
            Err(w) => self.fail(id, w),
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, id: impl Into<String>, got: T, want: T) {
        if got == want {
            self.pass(id);
        } else {
            self.fail(id, format!("got {got:?}, expected {want:?}"));
        }
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// Append with every id prefixed by `prefix/`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.id = format!("{prefix}/{}", c.id);
            c
        }));
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// First failures, for assertion messages.
    pub fn summary(&self) -> String {
        let fails: Vec<String> = self
            .failures()
            .take(5)
            .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
            .collect();
        format!("{} pass, {} fail; {}", self.passed(), self.failed(), fails.join("; "))
    }
}
