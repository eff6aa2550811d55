//! Run manifests: every invocation records its resolved parameters, seeds
//! and input hashes, and every output file cross-references the manifest
//! hash. Two runs with the same manifest hash produce identical outputs.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Resolved parameters, sorted by key.
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
    /// sha256 of each input, keyed by role (graph, truth, partition).
    pub inputs: Map<String, Value>,
    /// sha256 over everything above; outputs embed this.
    pub manifest_hash: String,
    /// Wall-clock duration; not part of the hash.
    pub timing_ms: u128,
}

impl Manifest {
    pub fn new(
        command: impl Into<String>,
        params: Map<String, Value>,
        seed: Option<u64>,
        inputs: Map<String, Value>,
    ) -> Self {
        let mut m = Self {
            tool: "terminalcut",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            params,
            seed,
            inputs,
            manifest_hash: String::new(),
            timing_ms: 0,
        };
        m.manifest_hash = m.core_hash();
        m
    }

    fn core_hash(&self) -> String {
        #[derive(Serialize)]
        struct Core<'a> {
            tool: &'a str,
            version: &'a str,
            command: &'a str,
            params: &'a Map<String, Value>,
            seed: &'a Option<u64>,
            inputs: &'a Map<String, Value>,
        }
        let core = Core {
            tool: self.tool,
            version: self.version,
            command: &self.command,
            params: &self.params,
            seed: &self.seed,
            inputs: &self.inputs,
        };
        let bytes = serde_json::to_vec(&core).expect("manifest core serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, json + "\n")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Helper for building sorted parameter maps tersely.
pub struct Params(pub Map<String, Value>);

impl Params {
    pub fn new() -> Self {
        Params(Map::new())
    }

    pub fn set(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn set_opt(mut self, key: &str, value: Option<impl Into<Value>>) -> Self {
        if let Some(v) = value {
            self.0.insert(key.to_string(), v.into());
        }
        self
    }
}
