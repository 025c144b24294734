use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        })
    }
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: Verdict,
    pub payload: Value,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// What a subcommand produced; `witness` is required for failures.
pub struct Outcome {
    pub verdict: Verdict,
    pub payload: Value,
    pub summary: String,
}

impl Outcome {
    pub fn pass(payload: Value, summary: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Pass, payload, summary: summary.into() }
    }

    pub fn fail(mut payload: Value, witness: Value, summary: impl Into<String>) -> Self {
        if let Value::Object(map) = &mut payload {
            map.insert("witness".into(), witness);
        }
        Outcome { verdict: Verdict::Fail, payload, summary: summary.into() }
    }

    pub fn from_bool(pass: bool, payload: Value, witness: Value, summary: impl Into<String>) -> Self {
        if pass {
            Outcome::pass(payload, summary)
        } else {
            Outcome::fail(payload, witness, summary)
        }
    }
}

/// Reads input files and remembers their digests for the report.
#[derive(Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.digests.push(InputDigest { path: path.to_path_buf(), sha256: format!("{:x}", Sha256::digest(&bytes)) });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).with_context(|| format!("{} does not match the expected schema", path.display()))
    }
}
