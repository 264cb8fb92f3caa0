//! Qubit lattice algorithm (QLA) for Maxwell's equations in two-dimensional
//! tensor-dielectric media.
//!
//! The electromagnetic field is carried as six real amplitudes per lattice
//! site, `(n_x E_x, n_y E_y, n_z E_z, H_x, H_y, H_z)` in units with μ0 = 1.
//! Time evolution is a fixed pipeline of local entangling rotations
//! ("collisions"), one-site component shifts ("streaming"), and sparse
//! gradient couplings ("potentials") that together recover the curl
//! equations to second order in the lattice perturbation parameter δ, with
//! diffusion ordering Δt = δ².
//!
//! The crate also contains a desk-scale open-system module for lossy 1D
//! media: Trotter splitting of a non-Hermitian generator, the amplitude
//! damping Kraus pair, its unitary dilation, and measurement-conditioned
//! evolution.
//!
//! See the `book/` directory for a guided tour; its code snippets are
//! compiled as doctests of this crate.

pub mod config;
pub mod diagnostics;
pub mod dissipation;
pub mod driver;
pub mod error;
pub mod evolution;
pub mod field;
pub mod grid;
pub mod lcu;
pub mod manifest;
pub mod media;
pub mod pulse;
pub mod snapshot;
pub mod verify;

pub use error::QlaError;
pub use evolution::{CollisionAngles, EvolutionPlan, PotentialAngles, PotentialMode};
pub use field::{Axis, QubitField};
pub use grid::LatticeGrid;
pub use media::{MediumSpec, RefractiveField};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/media.md")]
    mod media {}
    #[doc = include_str!("../../../book/src/evolution.md")]
    mod evolution {}
    #[doc = include_str!("../../../book/src/lcu.md")]
    mod lcu {}
    #[doc = include_str!("../../../book/src/diagnostics.md")]
    mod diagnostics {}
    #[doc = include_str!("../../../book/src/lossy.md")]
    mod lossy {}
    #[doc = include_str!("../../../book/src/running.md")]
    mod running {}
}
