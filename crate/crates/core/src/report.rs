//! Verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No failures, but some contributions could not be ruled out at the cap.
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub class: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub window: String,
    pub cap: usize,
    pub status: Status,
    pub residual_tuples: Vec<String>,
    pub failures: Vec<Failure>,
    /// Number of pointwise checks performed.
    pub checked: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(identity: impl Into<String>, window: impl Into<String>, cap: usize) -> Self {
        Report {
            identity: identity.into(),
            window: window.into(),
            cap,
            status: Status::Pass,
            residual_tuples: Vec::new(),
            failures: Vec::new(),
            checked: 0,
            notes: Vec::new(),
        }
    }

    /// Record one comparison; a mismatch becomes a failure.
    pub fn check(&mut self, class: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> bool {
        self.checked += 1;
        let (l, r) = (lhs.to_string(), rhs.to_string());
        if l != r {
            self.failures.push(Failure {
                class: class.into(),
                lhs: l,
                rhs: r,
            });
            self.status = Status::Fail;
            false
        } else {
            true
        }
    }

    /// Record a boolean property.
    pub fn assert(&mut self, class: impl Into<String>, holds: bool, what: &str) -> bool {
        if holds {
            self.checked += 1;
            true
        } else {
            self.check(class, what, "violated")
        }
    }

    pub fn residual(&mut self, tuple: impl Into<String>) {
        self.residual_tuples.push(tuple.into());
        if self.status == Status::Pass {
            self.status = Status::Residual;
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Fold another report's outcome into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.residual_tuples.extend(other.residual_tuples);
        self.notes.extend(other.notes);
        self.status = match (self.status, other.status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Residual, _) | (_, Status::Residual) => Status::Residual,
            _ => Status::Pass,
        };
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// 0 pass, 1 failure, 3 residuals only.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Residual => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_transitions() {
        let mut r = Report::new("x", "w", 3);
        assert!(r.check("a", 1, 1));
        assert!(r.passed());
        r.residual("t");
        assert_eq!(r.status, Status::Residual);
        assert!(!r.check("b", 1, 2));
        assert_eq!(r.exit_code(), 1);
        let v = r.to_json();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["failures"][0]["class"], "b");
    }
}
