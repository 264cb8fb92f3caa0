//! Gaussian pulse initialization.
//!
//! Pulses are uniform in y and Gaussian in x. The sign pairing selects the
//! propagation direction: with q2 = −q4 (or q1 = +q5) the Poynting flux
//! points toward +x, which the propagation tests pin down.

use crate::config::{Polarization, PulseConfig};
use crate::error::{QlaError, Result};
use crate::field::QubitField;
use crate::grid::LatticeGrid;
use crate::media::RefractiveField;

/// Ratio of the configured full width to the Gaussian sigma (full width at
/// one tenth of the peak, 2σ√(2 ln 10) ≈ 4.3σ).
pub const WIDTH_TO_SIGMA: f64 = 4.3;

pub fn init_pulse(
    pulse: &PulseConfig,
    grid: LatticeGrid,
    media: &RefractiveField,
) -> Result<QubitField> {
    let sigma = pulse.width / WIDTH_TO_SIGMA;
    let x0 = pulse.center_x;
    let amp = pulse.amplitude;

    // The launch region must be vacuum out to one full width. Smooth
    // profiles only approach n = 1 asymptotically, so "vacuum" means an
    // index deviation below 1e-6.
    if amp > 0.0 {
        for x in 0..grid.nx() {
            if (x as f64 - x0).abs() <= pulse.width {
                for y in 0..grid.ny() {
                    for c in 0..3 {
                        let n = media.n(c, x, y);
                        if (n - 1.0).abs() > 1e-6 {
                            return Err(QlaError::PulseInMedium(format!(
                                "n_{} = {n} at ({x}, {y}) within one pulse width of center_x = {x0}",
                                ["x", "y", "z"][c]
                            )));
                        }
                    }
                }
            }
        }
    }

    let envelope = |x: usize| -> f64 {
        let dx = x as f64 - x0;
        amp * (-dx * dx / (2.0 * sigma * sigma)).exp()
    };

    QubitField::new(grid, |x, _y| {
        let g = envelope(x);
        match pulse.polarization {
            Polarization::EzBy => [0.0, 0.0, -g, 0.0, g, 0.0],
            Polarization::EyBz => [0.0, g, 0.0, 0.0, 0.0, g],
        }
    })
}
