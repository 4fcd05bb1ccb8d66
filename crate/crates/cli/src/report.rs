use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// A guarantee stated as `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Check {
    pub fn le(name: &str, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_sha256: Option<String>,
    pub seed: u64,
    pub entropy_bits: BTreeMap<String, f64>,
    pub payload: Value,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: Option<&str>, seed: u64) -> Self {
        RunReport {
            command,
            input_sha256: input.map(sha256_hex),
            seed,
            entropy_bits: BTreeMap::new(),
            payload: Value::Null,
            checks: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn entropy(&mut self, key: &str, bits: f64) {
        self.entropy_bits.insert(key.to_string(), bits);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entropy_bits {
            let _ = writeln!(out, "{k}: {v:.6} bits");
        }
        if !self.payload.is_null() {
            let _ = writeln!(out, "solution: {}", self.payload);
        }
        for c in &self.checks {
            let tag = if c.holds { "ok" } else { "FAILED" };
            let _ = writeln!(
                out,
                "check {}: {tag} ({:.9} <= {:.9})",
                c.name, c.lhs, c.rhs
            );
        }
        out
    }
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}
