//! Pass/fail/skip reports with witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Seeds, windows, sample counts and similar run parameters.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, String>,
    /// Wall-clock time; kept out of JSON so identical runs serialize identically.
    #[serde(skip)]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Pass, detail, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, detail, Some(witness.into()));
    }

    pub fn skip(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Skip, detail, None);
    }

    /// Records pass when `witness` is `None`, fail otherwise.
    pub fn record(&mut self, name: impl Into<String>, detail: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(name, detail),
            Some(w) => self.fail(name, detail, w),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into(), witness });
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) {
        self.params.insert(key.into(), value.to_string());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.params.extend(other.params);
    }

    /// Adds another report's checks under a name prefix.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.params {
            self.params.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Sorts checks by name (stable for equal names).
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn to_json(&self) -> String {
        let sorted = self.clone().sorted();
        serde_json::to_string_pretty(&sorted).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sorted = self.clone().sorted();
        for c in &sorted.checks {
            write!(f, "[{}] {}", c.status, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "    witness: {w}")?;
            }
        }
        for (k, v) in &sorted.params {
            writeln!(f, "{k} = {v}")?;
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(f, "elapsed: {ms} ms")?;
        }
        Ok(())
    }
}
