//! Run orchestration: build the medium and plan, launch the pulse, iterate
//! steps, write snapshots and diagnostics, return the manifest.
//!
//! The run imposes no internal boundary conditions at any time; experiment
//! configs must leave enough vacuum padding that the periodic wrap never
//! reaches the scattering region within the simulated steps.

use crate::config::RunConfig;
use crate::diagnostics::DiagnosticsSeries;
use crate::error::{QlaError, Result};
use crate::evolution::{step_in_place, EvolutionPlan};
use crate::manifest::{SnapshotEntry, SnapshotManifest};
use crate::media::sample_medium;
use crate::pulse::init_pulse;
use crate::snapshot::write_snapshot;
use std::path::Path;

const FINITE_CHECK_INTERVAL: u64 = 512;

pub fn run(config: &RunConfig) -> Result<SnapshotManifest> {
    run_in(config, &config.run.output_dir.clone())
}

/// Like [`run`] but with an explicit output directory (CLI override).
pub fn run_in(config: &RunConfig, output_dir: &Path) -> Result<SnapshotManifest> {
    config.validate()?;
    let grid = config.lattice_grid()?;
    let media = sample_medium(&config.medium, grid)?;
    let plan = EvolutionPlan::new(&media, config.run.potential_mode);
    let mut field = init_pulse(&config.pulse, grid, &media)?;

    std::fs::create_dir_all(output_dir)?;
    let mut series = DiagnosticsSeries::new(&field, &media)?;
    let mut manifest = SnapshotManifest::new(config.clone());

    let save = |field: &crate::field::QubitField,
                    step: u64,
                    series: &mut DiagnosticsSeries,
                    manifest: &mut SnapshotManifest|
     -> Result<()> {
        let name = format!("snap_{step:08}.qlaf");
        let crc = write_snapshot(field, step, &output_dir.join(&name))?;
        manifest.snapshots.push(SnapshotEntry { step, path: name, crc32: crc });
        series.record(step, field, &media)
    };

    save(&field, 0, &mut series, &mut manifest)?;

    let steps = config.run.steps;
    let interval = config.run.snapshot_interval;
    for s in 1..=steps {
        step_in_place(&mut field, &plan);
        if s % FINITE_CHECK_INTERVAL == 0 && !field.is_finite() {
            return Err(QlaError::NonFiniteField { step: s });
        }
        let due = interval > 0 && s % interval == 0;
        if due && s != steps {
            save(&field, s, &mut series, &mut manifest)?;
        }
    }
    if steps > 0 {
        if !field.is_finite() {
            return Err(QlaError::NonFiniteField { step: steps });
        }
        save(&field, steps, &mut series, &mut manifest)?;
    }

    series.write_csv(&output_dir.join("diagnostics.csv"))?;
    manifest.diagnostics_csv = "diagnostics.csv".into();
    manifest.write(&output_dir.join("manifest.json"))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snapshot::read_snapshot;

    fn small_config(out: &Path) -> RunConfig {
        RunConfig::from_toml(&format!(
            r#"
[grid]
nx = 64
ny = 8
delta = 0.1

[medium]
kind = "homogeneous"
n = 1.0

[pulse]
polarization = "ez_by"
center_x = 24.0
width = 10.0
amplitude = 1.0

[run]
steps = 10
snapshot_interval = 5
output_dir = "{}"
"#,
            out.display()
        ))
        .unwrap()
    }

    #[test]
    fn zero_steps_yields_single_snapshot_of_initial_pulse() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = small_config(dir.path());
        config.run.steps = 0;
        let manifest = run(&config).unwrap();
        assert_eq!(manifest.snapshots.len(), 1);
        let (field, step) = read_snapshot(&dir.path().join(&manifest.snapshots[0].path)).unwrap();
        assert_eq!(step, 0);
        let media = sample_medium(&config.medium, config.lattice_grid().unwrap()).unwrap();
        let expected = init_pulse(&config.pulse, config.lattice_grid().unwrap(), &media).unwrap();
        assert_eq!(field, expected);
        manifest.validate(dir.path()).unwrap();
    }

    #[test]
    fn snapshot_cadence_and_final_state() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        let manifest = run(&config).unwrap();
        let steps: Vec<u64> = manifest.snapshots.iter().map(|e| e.step).collect();
        assert_eq!(steps, vec![0, 5, 10]);
        manifest.validate(dir.path()).unwrap();
        assert!(dir.path().join("diagnostics.csv").exists());
        assert!(dir.path().join("manifest.json").exists());
    }

    #[test]
    fn reruns_are_bit_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let config = small_config(dir_a.path());
        let a = run(&config).unwrap();
        let b = run_in(&config, dir_b.path()).unwrap();
        assert_eq!(a.run_id, b.run_id);
        let crcs_a: Vec<u32> = a.snapshots.iter().map(|e| e.crc32).collect();
        let crcs_b: Vec<u32> = b.snapshots.iter().map(|e| e.crc32).collect();
        assert_eq!(crcs_a, crcs_b);
    }
}
