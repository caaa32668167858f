//! Run manifests: enough to regenerate every output file.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::run::RunOutput;
use crate::scan::ScanJob;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobRecord {
    #[serde(flatten)]
    pub job: ScanJob,
    pub fingerprint: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileRecord {
    pub file: String,
    pub sha256: String,
    /// Tables a figure was drawn from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub preset: Option<&'a str>,
    pub config: &'a RunConfig,
    pub workers: usize,
    pub wall_time_s: f64,
    pub jobs: Vec<JobRecord>,
    pub files: Vec<FileRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn manifest_file(name: &str) -> String {
    format!("{name}_manifest.json")
}

impl<'a> Manifest<'a> {
    pub fn new(command: String, config: &'a RunConfig, out: &'a RunOutput, wall_time_s: f64) -> Self {
        let digest = |file: &str| {
            out.artifacts.iter().find(|a| a.file == file).map(|a| sha256_hex(a.contents.as_bytes())).unwrap_or_default()
        };
        let jobs = out
            .jobs
            .iter()
            .map(|job| JobRecord { job: job.clone(), fingerprint: job.raw.fingerprint(), sha256: digest(&job.file) })
            .collect();
        let files = out
            .artifacts
            .iter()
            .map(|a| FileRecord { file: a.file.clone(), sha256: sha256_hex(a.contents.as_bytes()), sources: a.sources.clone() })
            .collect();
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            preset: out.preset.as_deref(),
            config,
            workers: out.workers,
            wall_time_s,
            jobs,
            files,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
