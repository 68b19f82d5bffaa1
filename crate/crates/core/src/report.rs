use serde::{Deserialize, Serialize};

/// Outcome of an exact identity suite: how many instances were checked and
/// the first failing instance, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub checked: usize,
    pub failure: Option<CheckFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    /// Which instance failed, e.g. `"n=4"` or `"k=3,p=1"`.
    pub at: String,
    pub identity: String,
    pub detail: String,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            checked: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one instance. Only the first failure is kept and checking
    /// stops counting once something has failed.
    pub fn record(&mut self, ok: bool, at: impl FnOnce() -> String, identity: &str, detail: impl FnOnce() -> String) {
        if self.failure.is_some() {
            return;
        }
        self.checked += 1;
        if !ok {
            self.failure = Some(CheckFailure {
                at: at(),
                identity: identity.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn summary_line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({} checks)", self.suite, self.checked),
            Some(f) => format!(
                "FAIL {} at {} [{}]: {}",
                self.suite, f.at, f.identity, f.detail
            ),
        }
    }
}
