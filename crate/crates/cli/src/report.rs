//! Machine-readable reports. Everything in a report is a function of the input bytes
//! and the flags, so reruns are byte-identical.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "SUSPECT")]
    Suspect,
    #[serde(rename = "FAIL")]
    Fail,
}

impl From<willmore_core::ends::Status> for Status {
    fn from(s: willmore_core::ends::Status) -> Status {
        match s {
            willmore_core::ends::Status::Pass => Status::Pass,
            willmore_core::ends::Status::Suspect => Status::Suspect,
            willmore_core::ends::Status::Fail => Status::Fail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub input_sha256: String,
    pub options: Map<String, Value>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Report {
        Report {
            schema_version: REPORT_SCHEMA,
            tool: Tool { name: "willmore", version: env!("CARGO_PKG_VERSION") },
            command: command.to_string(),
            input_sha256: sha256_hex(input),
            options: Map::new(),
            status: Status::Pass,
            checks: vec![],
            data: Map::new(),
        }
    }

    pub fn option(&mut self, key: &str, value: impl Serialize) {
        self.options.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    /// Adds a check; a non-passing check without witness data gets its status as witness.
    pub fn check(&mut self, id: &str, status: Status, witness: Value) {
        let witness = if status != Status::Pass && witness.is_null() {
            Value::String(format!("{id} did not pass"))
        } else {
            witness
        };
        self.status = self.status.max(status);
        self.checks.push(Check { id: id.into(), status, witness });
    }

    pub fn pass(&mut self, id: &str, witness: Value) {
        self.check(id, Status::Pass, witness);
    }

    pub fn fail(&mut self, id: &str, witness: impl Into<Value>) {
        self.check(id, Status::Fail, witness.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Pass {
            0
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_is_the_worst_check() {
        let mut r = Report::new("verify", b"{}");
        r.pass("a", json!({}));
        assert_eq!(r.exit_code(), 0);
        r.check("b", Status::Suspect, Value::Null);
        r.pass("c", json!({}));
        assert_eq!(r.status, Status::Suspect);
        assert_eq!(r.exit_code(), 1);
        assert!(r.checks[1].witness.is_string());
    }

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
