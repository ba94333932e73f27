//! Pass/fail bookkeeping shared by certificates and sweeps.

use std::fmt::Display;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One named verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    pub fn skip(name: impl Into<String>, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skip,
            details: details.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Aggregate of a sweep over many items.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub params: serde_json::Value,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub first_failure: Option<String>,
    pub checks: Vec<Check>,
}

impl SweepReport {
    pub fn new(name: impl Into<String>, params: serde_json::Value) -> Self {
        Self {
            name: name.into(),
            params,
            ..Self::default()
        }
    }

    /// Records one item outcome without keeping a named check.
    pub fn tally(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn tally_skip(&mut self) {
        self.skip += 1;
    }

    /// Records a named check and counts it.
    pub fn push(&mut self, check: Check) {
        match check.status {
            Status::Pass => self.pass += 1,
            Status::Skip => self.skip += 1,
            Status::Fail => {
                self.fail += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{}: {}", check.name, check.details));
                }
            }
        }
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.fail == 0
    }

    pub fn merge(&mut self, other: SweepReport) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.skip += other.skip;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self.checks.extend(other.checks);
    }
}

/// Serializes a sequence through `Display`.
pub fn as_text_vec<T: Display, S: Serializer>(items: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(items.iter().map(ToString::to_string))
}

pub fn as_text<T: Display, S: Serializer>(item: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(item)
}
