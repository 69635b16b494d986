use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped on breaking changes to the report layout.
pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub command: String,
    pub tool_version: String,
    /// SHA-256 over the input files, each prefixed by its byte length.
    pub inputs_digest: String,
    pub outputs: serde_json::Value,
    /// Stage name → wall-clock milliseconds.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            command: command.to_owned(),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            inputs_digest: digest(inputs),
            outputs: serde_json::Value::Null,
            timings: BTreeMap::new(),
        }
    }

    /// Runs `f`, recording its duration under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings
            .insert(stage.to_owned(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    /// The report with timings cleared; equal across identical runs.
    pub fn without_timings(&self) -> Self {
        Self {
            timings: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let mut r = RunReport::new("bounds", &[b"abc"]);
        r.outputs = serde_json::json!({"value": 0.5});
        r.timed("eval", || ());
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn digest_depends_on_boundaries() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"ab"]), digest(&[b"ab"]));
        assert_eq!(digest(&[]).len(), 64);
    }
}
