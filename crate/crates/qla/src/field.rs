//! Six-component qubit field storage and its primitive transformations.
//!
//! Amplitudes are real `f64`, stored row-major with the component index
//! fastest: `amplitudes[(y*nx + x)*6 + c]`. Component order follows the
//! Dyson-mapped state: `(q0..q5) = (n_x E_x, n_y E_y, n_z E_z, H_x, H_y, H_z)`.

use crate::error::{QlaError, Result};
use crate::grid::LatticeGrid;
use rayon::prelude::*;

pub const COMPONENTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// One-lattice-unit shift direction: `Plus` displaces field content toward
/// +axis (the new value at site i is the old value at site i−1), `Minus`
/// the reverse. Both wrap periodically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitField {
    grid: LatticeGrid,
    amplitudes: Vec<f64>,
}

impl QubitField {
    /// Builds a field by evaluating `fill(x, y)` at every site.
    ///
    /// Rejects non-finite fill values.
    pub fn new<F>(grid: LatticeGrid, mut fill: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> [f64; COMPONENTS],
    {
        let (nx, ny) = (grid.nx(), grid.ny());
        let mut amplitudes = vec![0.0; nx * ny * COMPONENTS];
        for y in 0..ny {
            for x in 0..nx {
                let v = fill(x, y);
                for (c, &a) in v.iter().enumerate() {
                    if !a.is_finite() {
                        return Err(QlaError::NonFiniteAmplitude { x, y, component: c });
                    }
                    amplitudes[(y * nx + x) * COMPONENTS + c] = a;
                }
            }
        }
        Ok(Self { grid, amplitudes })
    }

    pub fn zeros(grid: LatticeGrid) -> Self {
        let n = grid.sites() * COMPONENTS;
        Self { grid, amplitudes: vec![0.0; n] }
    }

    /// Wraps an existing amplitude buffer (length `nx*ny*6`, component fastest).
    pub fn from_amplitudes(grid: LatticeGrid, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != grid.sites() * COMPONENTS {
            return Err(QlaError::ShapeMismatch(format!(
                "expected {} amplitudes, got {}",
                grid.sites() * COMPONENTS,
                amplitudes.len()
            )));
        }
        Ok(Self { grid, amplitudes })
    }

    #[inline]
    pub fn grid(&self) -> LatticeGrid {
        self.grid
    }

    #[inline]
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amplitudes
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        self.amplitudes[(y * self.grid.nx() + x) * COMPONENTS + c]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, v: f64) {
        let nx = self.grid.nx();
        self.amplitudes[(y * nx + x) * COMPONENTS + c] = v;
    }

    /// Squared global L2 norm, Σ q_c², accumulated with Neumaier compensation
    /// in a fixed order so results are independent of thread count.
    pub fn l2_norm_sq(&self) -> f64 {
        neumaier_sum(self.amplitudes.iter().map(|a| a * a))
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|a| a.is_finite())
    }

    /// Cyclically displaces the listed components one lattice unit along
    /// `axis`; the other components are untouched. A pure permutation:
    /// bit-exactly invertible and norm-preserving.
    pub fn shift(&self, components: &[usize], axis: Axis, dir: Shift) -> Self {
        let mut out = self.clone();
        out.shift_in_place(components, axis, dir);
        out
    }

    pub fn shift_in_place(&mut self, components: &[usize], axis: Axis, dir: Shift) {
        assert!(!components.is_empty(), "component subset must be non-empty");
        assert!(components.iter().all(|&c| c < COMPONENTS));
        match axis {
            Axis::X => self.shift_x(components, dir),
            Axis::Y => self.shift_y(components, dir),
        }
    }

    fn shift_x(&mut self, components: &[usize], dir: Shift) {
        let nx = self.grid.nx();
        let row_len = nx * COMPONENTS;
        self.amplitudes.par_chunks_mut(row_len).for_each(|row| {
            for &c in components {
                match dir {
                    Shift::Plus => {
                        let last = row[(nx - 1) * COMPONENTS + c];
                        for x in (1..nx).rev() {
                            row[x * COMPONENTS + c] = row[(x - 1) * COMPONENTS + c];
                        }
                        row[c] = last;
                    }
                    Shift::Minus => {
                        let first = row[c];
                        for x in 0..nx - 1 {
                            row[x * COMPONENTS + c] = row[(x + 1) * COMPONENTS + c];
                        }
                        row[(nx - 1) * COMPONENTS + c] = first;
                    }
                }
            }
        });
    }

    fn shift_y(&mut self, components: &[usize], dir: Shift) {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let row_len = nx * COMPONENTS;
        let mut lane = vec![0.0; nx];
        for &c in components {
            match dir {
                Shift::Plus => {
                    let top = (ny - 1) * row_len;
                    for x in 0..nx {
                        lane[x] = self.amplitudes[top + x * COMPONENTS + c];
                    }
                    for y in (1..ny).rev() {
                        let (dst, src) = (y * row_len, (y - 1) * row_len);
                        for x in 0..nx {
                            self.amplitudes[dst + x * COMPONENTS + c] =
                                self.amplitudes[src + x * COMPONENTS + c];
                        }
                    }
                    for x in 0..nx {
                        self.amplitudes[x * COMPONENTS + c] = lane[x];
                    }
                }
                Shift::Minus => {
                    for x in 0..nx {
                        lane[x] = self.amplitudes[x * COMPONENTS + c];
                    }
                    for y in 0..ny - 1 {
                        let (dst, src) = (y * row_len, (y + 1) * row_len);
                        for x in 0..nx {
                            self.amplitudes[dst + x * COMPONENTS + c] =
                                self.amplitudes[src + x * COMPONENTS + c];
                        }
                    }
                    let top = (ny - 1) * row_len;
                    for x in 0..nx {
                        self.amplitudes[top + x * COMPONENTS + c] = lane[x];
                    }
                }
            }
        }
    }

    /// Replaces the 6-vector at each site by `site_matrix(x, y) · q`.
    ///
    /// Sites are independent, so the parallel partitioning cannot change the
    /// result.
    pub fn pointwise_apply<F>(&self, site_matrix: F) -> Self
    where
        F: Fn(usize, usize) -> [[f64; COMPONENTS]; COMPONENTS] + Sync,
    {
        let nx = self.grid.nx();
        let mut out = self.clone();
        out.amplitudes
            .par_chunks_mut(nx * COMPONENTS)
            .enumerate()
            .for_each(|(y, row)| {
                for x in 0..nx {
                    let m = site_matrix(x, y);
                    let base = x * COMPONENTS;
                    let q: [f64; COMPONENTS] = row[base..base + COMPONENTS].try_into().unwrap();
                    for (r, mrow) in m.iter().enumerate() {
                        let mut acc = 0.0;
                        for (c, &mrc) in mrow.iter().enumerate() {
                            acc += mrc * q[c];
                        }
                        row[base + r] = acc;
                    }
                }
            });
        out
    }
}

/// Neumaier-compensated sum over an iterator, sequential and deterministic.
pub fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
