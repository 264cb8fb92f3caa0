//! Physics observables: total electromagnetic energy, divergence
//! constraints, drift tracking, and CSV time series.
//!
//! Reductions use fixed-order compensated summation so recorded values are
//! reproducible bit-for-bit across thread counts.

use crate::error::{QlaError, Result};
use crate::field::{neumaier_sum, QubitField, COMPONENTS};
use crate::media::RefractiveField;
use std::io::Write;

/// Discrete total electromagnetic energy,
/// (1/(nx·ny)) Σ_sites Σ_c q_c² = ⟨ε_i E_i² + μ0 B_i²⟩.
pub fn energy(field: &QubitField) -> f64 {
    field.l2_norm_sq() / field.grid().sites() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub step: u64,
    pub energy: f64,
    pub relative_drift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    /// Max |div| over sites, divided by the supplied normalizer.
    pub max_abs: f64,
    /// Site of the maximum.
    pub location: (usize, usize),
    pub normalizer: f64,
}

/// Peak |B| over the lattice (μ0 = 1, so B = (q3, q4, q5)).
pub fn peak_b(field: &QubitField) -> f64 {
    let amps = field.amplitudes();
    let mut peak = 0.0f64;
    for site in amps.chunks_exact(COMPONENTS) {
        let b2 = site[3] * site[3] + site[4] * site[4] + site[5] * site[5];
        peak = peak.max(b2);
    }
    peak.sqrt()
}

/// Peak |D| over the lattice, with D_i = ε_i E_i = n_i q_i.
pub fn peak_d(field: &QubitField, media: &RefractiveField) -> f64 {
    let grid = field.grid();
    let mut peak = 0.0f64;
    for y in 0..grid.ny() {
        for x in 0..grid.nx() {
            let mut d2 = 0.0;
            for i in 0..3 {
                let d = media.n(i, x, y) * field.get(x, y, i);
                d2 += d * d;
            }
            peak = peak.max(d2);
        }
    }
    peak.sqrt()
}

fn max_divergence<F>(field: &QubitField, normalizer: f64, plane: F) -> Result<DivergenceReport>
where
    F: Fn(usize, usize, usize) -> f64,
{
    if !(normalizer > 0.0) {
        return Err(QlaError::ShapeMismatch(
            "divergence normalizer is zero (trivial initial pulse)".into(),
        ));
    }
    let grid = field.grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut max_abs = 0.0f64;
    let mut location = (0, 0);
    for y in 0..ny {
        let yp = (y + 1) % ny;
        let ym = (y + ny - 1) % ny;
        for x in 0..nx {
            let xp = (x + 1) % nx;
            let xm = (x + nx - 1) % nx;
            // 2nd-order central differences per lattice unit, periodic wrap.
            let div = (plane(xp, y, 0) - plane(xm, y, 0)) / 2.0
                + (plane(x, yp, 1) - plane(x, ym, 1)) / 2.0;
            if div.abs() > max_abs {
                max_abs = div.abs();
                location = (x, y);
            }
        }
    }
    Ok(DivergenceReport { max_abs: max_abs / normalizer, location, normalizer })
}

/// Max |∂B_x/∂x + ∂B_y/∂y| normalized by `b0` (the initial peak |B|).
pub fn div_b(field: &QubitField, b0: f64) -> Result<DivergenceReport> {
    max_divergence(field, b0, |x, y, axis| field.get(x, y, 3 + axis))
}

/// Max |∂D_x/∂x + ∂D_y/∂y| normalized by `d0`, with D_i = n_i q_i.
pub fn div_d(field: &QubitField, media: &RefractiveField, d0: f64) -> Result<DivergenceReport> {
    max_divergence(field, d0, |x, y, axis| media.n(axis, x, y) * field.get(x, y, axis))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub step: u64,
    pub energy: f64,
    pub relative_drift: f64,
    pub max_div_b: f64,
    pub max_div_d: f64,
    pub div_b_location: (usize, usize),
    pub div_d_location: (usize, usize),
}

/// Accumulates energy and divergence records against normalizers frozen at
/// t = 0.
#[derive(Debug, Clone)]
pub struct DiagnosticsSeries {
    e0: f64,
    b0: f64,
    d0: f64,
    pub rows: Vec<SeriesRow>,
}

impl DiagnosticsSeries {
    pub fn new(initial: &QubitField, media: &RefractiveField) -> Result<Self> {
        let e0 = energy(initial);
        let b0 = peak_b(initial);
        let d0 = peak_d(initial, media);
        if !(b0 > 0.0) || !(d0 > 0.0) {
            return Err(QlaError::ShapeMismatch(
                "initial pulse has zero |B| or |D| peak; diagnostics need a non-trivial pulse"
                    .into(),
            ));
        }
        Ok(Self { e0, b0, d0, rows: Vec::new() })
    }

    pub fn initial_energy(&self) -> f64 {
        self.e0
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn d0(&self) -> f64 {
        self.d0
    }

    pub fn record(&mut self, step: u64, field: &QubitField, media: &RefractiveField) -> Result<()> {
        let e = energy(field);
        let drift = if self.e0 != 0.0 { (e - self.e0) / self.e0 } else { 0.0 };
        let b = div_b(field, self.b0)?;
        let d = div_d(field, media, self.d0)?;
        self.rows.push(SeriesRow {
            step,
            energy: e,
            relative_drift: drift,
            max_div_b: b.max_abs,
            max_div_d: d.max_abs,
            div_b_location: b.location,
            div_d_location: d.location,
        });
        Ok(())
    }

    pub fn max_abs_drift(&self) -> f64 {
        self.rows.iter().map(|r| r.relative_drift.abs()).fold(0.0, f64::max)
    }

    pub fn energy_records(&self) -> impl Iterator<Item = EnergyRecord> + '_ {
        self.rows.iter().map(|r| EnergyRecord {
            step: r.step,
            energy: r.energy,
            relative_drift: r.relative_drift,
        })
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "step,energy,relative_drift,max_div_b,max_div_d")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.17e},{:.17e},{:.17e},{:.17e}",
                r.step, r.energy, r.relative_drift, r.max_div_b, r.max_div_d
            )?;
        }
        Ok(())
    }
}

/// Compensated mean of a slice (used for deterministic reductions in tests).
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    neumaier_sum(values.iter().copied()) / values.len() as f64
}
