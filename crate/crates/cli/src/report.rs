use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing failed inside the configured bounds, but nothing was certified either.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

impl Check {
    pub fn new(name: &str, status: Status, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status,
            witness: witness.into(),
        }
    }

    pub fn from_bool(name: &str, ok: bool, witness: impl Into<String>) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

/// Field order is the serialization order; nested objects use sorted keys.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One line per check, for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.witness));
        }
        out
    }
}
