//! The machine-readable report document: a deterministic body, its hash,
//! and a timing envelope kept outside the hashed part.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBody {
    pub version: String,
    pub tool: String,
    pub command: String,
    pub params: serde_json::Value,
    pub instance_sha256: String,
    pub result: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub body: ReportBody,
    pub body_sha256: String,
    pub elapsed_ms: u128,
}

pub const REPORT_VERSION: &str = "1";

pub fn tool_id() -> String {
    format!("semitop {}", env!("CARGO_PKG_VERSION"))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

impl ReportDocument {
    pub fn new(body: ReportBody, elapsed_ms: u128) -> ReportDocument {
        let bytes = serde_json::to_vec(&body).expect("body serializes");
        ReportDocument {
            body_sha256: sha256_hex(&bytes),
            body,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}
