//! The machine-readable run report emitted under `--json`.

use mvtop_core::CheckReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &Path, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// One report per invocation. `elapsed_ms` stays null unless `--timing` is
/// given, so that reports for the same inputs are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub passed: bool,
    pub qualifier: Option<String>,
    pub witnesses: Vec<String>,
    pub results: Vec<String>,
    pub verdicts: Vec<CheckReport>,
    pub notes: Vec<String>,
    pub elapsed_ms: Option<u128>,
}
