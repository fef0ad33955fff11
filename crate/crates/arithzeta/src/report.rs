//! Machine-readable verification reports.
//!
//! Every verification suite produces a `CheckReport`: an ordered list of
//! check entries, each pass/fail/skip with a detail string carrying the
//! minimal counterexample on failure. Skips never mask failures; the exit
//! status is 0 iff no entry failed.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub params: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        id: impl Into<String>,
        params: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) {
        self.entries.push(CheckEntry {
            id: id.into(),
            params: params.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, id: impl Into<String>, params: impl Into<String>, detail: impl Into<String>) {
        self.push(id, params, Status::Pass, detail);
    }

    pub fn fail(&mut self, id: impl Into<String>, params: impl Into<String>, detail: impl Into<String>) {
        self.push(id, params, Status::Fail, detail);
    }

    pub fn skip(&mut self, id: impl Into<String>, params: impl Into<String>, detail: impl Into<String>) {
        self.push(id, params, Status::Skip, detail);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// 0 if nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.id, e.params, status, e.detail
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_exit_codes() {
        let mut r = CheckReport::new("demo");
        r.pass("A", "n<=10", "checked 10");
        r.skip("B", "", "budget");
        assert!(r.passed());
        assert_eq!(r.exit_code(), 0);
        r.fail("C", "n<=10", "first counterexample n=4");
        assert!(!r.passed());
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.first_failure().unwrap().id, "C");

        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
