//! Experiment configuration: a TOML file with `[grid]`, `[medium]`,
//! `[pulse]` and `[run]` tables. Unknown keys are errors.

use crate::error::{QlaError, Result};
use crate::evolution::PotentialMode;
use crate::grid::LatticeGrid;
use crate::media::MediumSpec;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    /// q2 = −A·g(x), q4 = +A·g(x): E_z with B_y, Poynting flux toward +x.
    EzBy,
    /// q1 = +A·g(x), q5 = +A·g(x): E_y with B_z, Poynting flux toward +x.
    EyBz,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    pub polarization: Polarization,
    pub center_x: f64,
    /// Full width in lattice units (≈ 4.3 Gaussian sigmas).
    pub width: f64,
    pub amplitude: f64,
}

fn default_seed() -> u64 {
    0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub steps: u64,
    /// 0 records only the initial and final states.
    pub snapshot_interval: u64,
    #[serde(default)]
    pub potential_mode: PotentialMode,
    pub output_dir: PathBuf,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub medium: MediumSpec,
    pub pulse: PulseConfig,
    pub run: RunSection,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: RunConfig =
            toml::from_str(text).map_err(|e| QlaError::ConfigParse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn lattice_grid(&self) -> Result<LatticeGrid> {
        LatticeGrid::new(self.grid.nx, self.grid.ny, self.grid.delta)
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice_grid()?;
        if !(self.pulse.width > 0.0) {
            return Err(QlaError::InvalidConfig("pulse width must be positive".into()));
        }
        if !self.pulse.amplitude.is_finite() || self.pulse.amplitude < 0.0 {
            return Err(QlaError::InvalidConfig("pulse amplitude must be finite and >= 0".into()));
        }
        if self.pulse.center_x < 0.0 || self.pulse.center_x >= self.grid.nx as f64 {
            return Err(QlaError::InvalidConfig("pulse center_x outside the grid".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
[grid]
nx = 512
ny = 512
delta = 0.1

[medium]
kind = "cylinder"
center = [256.0, 256.0]
diameter = 100.0
n_max = 3.0
boundary_width = 5.0

[pulse]
polarization = "ez_by"
center_x = 120.0
width = 50.0
amplitude = 1.0

[run]
steps = 3000
snapshot_interval = 500
output_dir = "out"
"#;

    #[test]
    fn parses_example() {
        let c = RunConfig::from_toml(EXAMPLE).unwrap();
        assert_eq!(c.grid.nx, 512);
        assert_eq!(c.run.potential_mode, PotentialMode::HalfwayAndEnd);
        assert_eq!(c.run.seed, 0);
        assert!(matches!(c.medium, MediumSpec::Cylinder { .. }));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let bad = EXAMPLE.replace("steps = 3000", "steps = 3000\nunknown_knob = 1");
        assert!(matches!(RunConfig::from_toml(&bad), Err(QlaError::ConfigParse(_))));
    }

    #[test]
    fn round_trips_through_toml() {
        let c = RunConfig::from_toml(EXAMPLE).unwrap();
        let again = RunConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn rejects_bad_pulse() {
        let bad = EXAMPLE.replace("width = 50.0", "width = -1.0");
        assert!(RunConfig::from_toml(&bad).is_err());
        let bad = EXAMPLE.replace("center_x = 120.0", "center_x = 9000.0");
        assert!(RunConfig::from_toml(&bad).is_err());
    }
}
