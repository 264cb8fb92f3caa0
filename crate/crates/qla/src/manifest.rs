//! Run manifest: indexes the snapshots and diagnostics a run produced.
//!
//! Written as JSON. The run id is derived from the configuration alone so
//! identical configs yield identical manifests.

use crate::config::RunConfig;
use crate::error::{QlaError, Result};
use crate::snapshot::verify_snapshot_crc;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub step: u64,
    /// Path relative to the manifest's directory.
    pub path: String,
    pub crc32: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotManifest {
    pub run_id: String,
    pub config: RunConfig,
    pub snapshots: Vec<SnapshotEntry>,
    pub diagnostics_csv: String,
}

impl SnapshotManifest {
    pub fn new(config: RunConfig) -> Self {
        let run_id = format!("qla-{:08x}", crc32fast::hash(config.to_toml().as_bytes()));
        Self { run_id, config, snapshots: Vec::new(), diagnostics_csv: String::new() }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| QlaError::ManifestInconsistent(e.to_string()))?;
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| QlaError::ManifestInconsistent(e.to_string()))
    }

    /// Checks that every listed snapshot exists under `base_dir` with a
    /// matching checksum.
    pub fn validate(&self, base_dir: &Path) -> Result<()> {
        for entry in &self.snapshots {
            let path = base_dir.join(&entry.path);
            let crc = verify_snapshot_crc(&path)?;
            if crc != entry.crc32 {
                return Err(QlaError::ManifestInconsistent(format!(
                    "{}: manifest crc {:#010x}, file crc {:#010x}",
                    entry.path, entry.crc32, crc
                )));
            }
        }
        if !self.diagnostics_csv.is_empty() && !base_dir.join(&self.diagnostics_csv).exists() {
            return Err(QlaError::ManifestInconsistent(format!(
                "diagnostics file {} missing",
                self.diagnostics_csv
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> RunConfig {
        RunConfig::from_toml(
            r#"
[grid]
nx = 16
ny = 8
delta = 0.1

[medium]
kind = "homogeneous"
n = 1.0

[pulse]
polarization = "ez_by"
center_x = 8.0
width = 4.0
amplitude = 1.0

[run]
steps = 2
snapshot_interval = 1
output_dir = "out"
"#,
        )
        .unwrap()
    }

    #[test]
    fn run_id_is_deterministic() {
        let a = SnapshotManifest::new(config());
        let b = SnapshotManifest::new(config());
        assert_eq!(a.run_id, b.run_id);
    }

    #[test]
    fn validate_detects_missing_and_mismatched_files() {
        let dir = tempfile::tempdir().unwrap();
        let grid = crate::grid::LatticeGrid::new(4, 4, 0.1).unwrap();
        let f = crate::field::QubitField::zeros(grid);
        let crc = crate::snapshot::write_snapshot(&f, 0, &dir.path().join("s0.qlaf")).unwrap();

        let mut m = SnapshotManifest::new(config());
        m.snapshots.push(SnapshotEntry { step: 0, path: "s0.qlaf".into(), crc32: crc });
        m.validate(dir.path()).unwrap();

        m.snapshots.push(SnapshotEntry { step: 1, path: "missing.qlaf".into(), crc32: 0 });
        assert!(m.validate(dir.path()).is_err());

        m.snapshots.pop();
        m.snapshots[0].crc32 ^= 1;
        assert!(matches!(
            m.validate(dir.path()),
            Err(QlaError::ManifestInconsistent(_))
        ));
    }

    #[test]
    fn manifest_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = SnapshotManifest::new(config());
        m.diagnostics_csv = "diagnostics.csv".into();
        let path = dir.path().join("manifest.json");
        m.write(&path).unwrap();
        let back = SnapshotManifest::read(&path).unwrap();
        assert_eq!(m, back);
    }
}
