//! Pass/fail bookkeeping shared by all verification suites.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClaimResult {
    pub claim: String,
    pub checked: usize,
    pub failed: usize,
    /// Largest residual seen. Exact checks record 0 or 1.
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl ClaimResult {
    pub fn new(claim: impl Into<String>) -> Self {
        ClaimResult { claim: claim.into(), checked: 0, failed: 0, max_residual: 0.0, first_failure: None, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Record an exact check.
    pub fn exact(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.record(ok, if ok { 0.0 } else { 1.0 }, detail);
    }

    pub fn record(&mut self, ok: bool, residual: f64, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = residual;
        }
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    /// A failed computation (an error instead of a verdict) counts as a failed check.
    pub fn error(&mut self, detail: impl Into<String>) {
        let d = detail.into();
        self.record(false, f64::INFINITY, || d);
    }

    pub fn merge(&mut self, other: ClaimResult) {
        self.checked += other.checked;
        self.failed += other.failed;
        if other.max_residual.is_nan() || other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
        }
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub claims: Vec<ClaimResult>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, claims: Vec<ClaimResult>) -> Self {
        let passed = claims.iter().all(|c| c.passed());
        SuiteReport { suite: suite.into(), passed, claims }
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.claim == name)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.claims.iter().find(|c| !c.passed()).map(|c| {
            format!(
                "{}: {}",
                c.claim,
                c.first_failure.clone().unwrap_or_else(|| "no checks were run".to_string())
            )
        })
    }

    pub fn combine(suite: impl Into<String>, parts: Vec<SuiteReport>) -> Self {
        let claims = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.suite;
                r.claims.into_iter().map(move |mut c| {
                    c.claim = format!("{prefix}/{}", c.claim);
                    c
                })
            })
            .collect();
        SuiteReport::new(suite, claims)
    }
}

/// Merge per-item claim lists (one list per parallel work item) claim by claim.
pub fn merge_claims(template: &[&str], parts: Vec<Vec<ClaimResult>>) -> Vec<ClaimResult> {
    let mut out: Vec<ClaimResult> = template.iter().map(|n| ClaimResult::new(*n)).collect();
    for part in parts {
        for c in part {
            if let Some(slot) = out.iter_mut().find(|o| o.claim == c.claim) {
                let note = c.note.clone();
                slot.merge(c);
                if slot.note.is_none() {
                    slot.note = note;
                }
            } else {
                out.push(c);
            }
        }
    }
    out
}
