//! Periodic 2D lattice geometry.

use crate::error::{QlaError, Result};
use serde::{Deserialize, Serialize};

/// A periodic 2D lattice of `nx × ny` sites with perturbation parameter δ.
///
/// δ plays a double role: it sets the collision angles (and through them the
/// vacuum propagation speed, δ sites per step) and it is the physical grid
/// spacing under diffusion ordering, so one step advances time by Δt = δ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeGrid {
    nx_sites: usize,
    ny_sites: usize,
    delta: f64,
}

impl LatticeGrid {
    pub const MIN_SITES: usize = 4;

    pub fn new(nx_sites: usize, ny_sites: usize, delta: f64) -> Result<Self> {
        if nx_sites < Self::MIN_SITES || ny_sites < Self::MIN_SITES {
            return Err(QlaError::InvalidGrid(format!(
                "need at least {}x{} sites, got {}x{}",
                Self::MIN_SITES,
                Self::MIN_SITES,
                nx_sites,
                ny_sites
            )));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(QlaError::InvalidGrid(format!("delta must be positive, got {delta}")));
        }
        Ok(Self { nx_sites, ny_sites, delta })
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx_sites
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny_sites
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    #[inline]
    pub fn sites(&self) -> usize {
        self.nx_sites * self.ny_sites
    }

    /// Time advanced by one step under diffusion ordering.
    #[inline]
    pub fn dt(&self) -> f64 {
        self.delta * self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_grids_and_bad_delta() {
        assert!(LatticeGrid::new(3, 8, 0.1).is_err());
        assert!(LatticeGrid::new(8, 2, 0.1).is_err());
        assert!(LatticeGrid::new(8, 8, 0.0).is_err());
        assert!(LatticeGrid::new(8, 8, -0.1).is_err());
        assert!(LatticeGrid::new(8, 8, f64::NAN).is_err());
        assert!(LatticeGrid::new(4, 4, 0.1).is_ok());
    }

    #[test]
    fn diffusion_ordering() {
        let g = LatticeGrid::new(8, 8, 0.1).unwrap();
        assert!((g.dt() - 0.01).abs() < 1e-17);
        assert_eq!(g.sites(), 64);
    }
}
