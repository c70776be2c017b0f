//! Run manifests: enough provenance to reproduce every emitted byte.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub backend: String,
    pub problem: String,
    pub truncation: usize,
    pub config_sha256: String,
    pub seed: u64,
    pub wall_clock_seconds: f64,
    pub files: Vec<FileRecord>,
}

#[derive(Debug, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(
        command: &str,
        backend: &str,
        problem: &str,
        truncation: usize,
        config_text: &str,
        seed: u64,
    ) -> Self {
        RunManifest {
            schema_version: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            backend: backend.to_string(),
            problem: problem.to_string(),
            truncation,
            config_sha256: sha256_hex(config_text.as_bytes()),
            seed,
            wall_clock_seconds: 0.0,
            files: Vec::new(),
        }
    }

    pub fn record_file(&mut self, name: &str, bytes: &[u8]) {
        self.files.push(FileRecord {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn write_to(&self, path: &Path) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}
