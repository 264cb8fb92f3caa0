//! Shared test support: an independent finite-difference oracle for the
//! continuum system, an independent dense matrix exponential, and smooth
//! test scenarios. These deliberately do not reuse the library's own
//! verification helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qla::field::QubitField;
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, MediumSpec, RefractiveField};

pub type CMat = DMatrix<Complex64>;

/// Central-difference right-hand side of the six-component curl system on
/// the periodic lattice, physical grid spacing δ:
///
/// ∂q0/∂t =  (1/n_x) ∂y q5
/// ∂q1/∂t = −(1/n_y) ∂x q5
/// ∂q2/∂t =  (1/n_z)(∂x q4 − ∂y q3)
/// ∂q3/∂t = −∂y (q2/n_z)   (product rule, gradient from the medium's tables)
/// ∂q4/∂t =  ∂x (q2/n_z)
/// ∂q5/∂t = −∂x (q1/n_y) + ∂y (q0/n_x)
pub fn oracle_rhs(field: &QubitField, media: &RefractiveField) -> Vec<f64> {
    let grid = field.grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let delta = grid.delta();
    let mut rhs = vec![0.0; nx * ny * 6];
    let idx = |x: usize, y: usize, c: usize| (y * nx + x) * 6 + c;
    let amps = field.amplitudes();
    for y in 0..ny {
        let yp = (y + 1) % ny;
        let ym = (y + ny - 1) % ny;
        for x in 0..nx {
            let xp = (x + 1) % nx;
            let xm = (x + nx - 1) % nx;
            let ddx = |c: usize| (amps[idx(xp, y, c)] - amps[idx(xm, y, c)]) / (2.0 * delta);
            let ddy = |c: usize| (amps[idx(x, yp, c)] - amps[idx(x, ym, c)]) / (2.0 * delta);
            let q = |c: usize| amps[idx(x, y, c)];
            let n = |c: usize| media.n(c, x, y);
            // gradients per physical length
            let gx = |c: usize| media.dn_dx(c, x, y) / delta;
            let gy = |c: usize| media.dn_dy(c, x, y) / delta;
            rhs[idx(x, y, 0)] = ddy(5) / n(0);
            rhs[idx(x, y, 1)] = -ddx(5) / n(1);
            rhs[idx(x, y, 2)] = (ddx(4) - ddy(3)) / n(2);
            rhs[idx(x, y, 3)] = -ddy(2) / n(2) + gy(2) / (n(2) * n(2)) * q(2);
            rhs[idx(x, y, 4)] = ddx(2) / n(2) - gx(2) / (n(2) * n(2)) * q(2);
            rhs[idx(x, y, 5)] = -ddx(1) / n(1) + gx(1) / (n(1) * n(1)) * q(1) + ddy(0) / n(0)
                - gy(0) / (n(0) * n(0)) * q(0);
        }
    }
    rhs
}

/// RMS difference between a stepped field and `Q + dt_scale·δ²·RHS`.
pub fn one_step_residual(
    stepped: &QubitField,
    initial: &QubitField,
    media: &RefractiveField,
    dt_scale: f64,
) -> f64 {
    let rhs = oracle_rhs(initial, media);
    let dt = initial.grid().dt() * dt_scale;
    let mut sum = 0.0;
    for ((s, i), r) in stepped
        .amplitudes()
        .iter()
        .zip(initial.amplitudes())
        .zip(&rhs)
    {
        let e = s - (i + dt * r);
        sum += e * e;
    }
    (sum / stepped.amplitudes().len() as f64).sqrt()
}

/// Smooth periodic scenario fixed in physical coordinates (domain `length`),
/// resolved with length/δ sites per side.
pub fn smooth_scenario(delta: f64, length: f64, homogeneous: bool) -> (QubitField, RefractiveField) {
    let n = (length / delta).round() as usize;
    let grid = LatticeGrid::new(n, n, delta).unwrap();
    let k = 2.0 * std::f64::consts::PI / length;
    let media = if homogeneous {
        sample_medium(&MediumSpec::Homogeneous { n: 1.3 }, grid).unwrap()
    } else {
        let profile = |base: f64, amp: f64, px: f64, py: f64| -> Vec<f64> {
            let mut plane = vec![0.0; grid.sites()];
            for y in 0..n {
                for x in 0..n {
                    let (xp, yp) = (x as f64 * delta, y as f64 * delta);
                    plane[y * n + x] = base + amp * (k * xp + px).sin() * (k * yp + py).cos();
                }
            }
            plane
        };
        RefractiveField::from_planes(
            grid,
            [
                profile(1.40, 0.20, 0.0, 0.0),
                profile(1.30, 0.25, 1.0, 0.5),
                profile(1.50, 0.15, 2.0, 1.3),
            ],
        )
        .unwrap()
    };
    let field = QubitField::new(grid, |x, y| {
        let (xp, yp) = (x as f64 * delta, y as f64 * delta);
        let mut q = [0.0; 6];
        for (c, qc) in q.iter_mut().enumerate() {
            *qc = (0.5 + 0.1 * c as f64)
                * (k * xp + 0.7 * c as f64).sin()
                * (k * yp + 0.3 * c as f64).cos();
        }
        q
    })
    .unwrap();
    (field, media)
}

/// Least-squares slope of ln y against ln x.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Independent dense matrix exponential: plain Taylor series after halving
/// the argument until its max-abs entry is below 1/16.
pub fn expm_oracle(a: &CMat) -> CMat {
    let n = a.nrows();
    let max_abs = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut halvings = 0u32;
    let mut scale = 1.0;
    while max_abs * scale * n as f64 > 0.0625 {
        halvings += 1;
        scale *= 0.5;
    }
    let b = a.map(|v| v * Complex64::new(scale, 0.0));
    let mut sum = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..=40 {
        term = (&term * &b) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-22 {
            break;
        }
    }
    for _ in 0..halvings {
        sum = &sum * &sum;
    }
    sum
}

/// Extrema of q2 over an x-window, averaged over a band of rows.
pub fn q2_window(field: &QubitField, x0: usize, x1: usize, y0: usize, y1: usize) -> (f64, f64) {
    let rows = (y1 - y0) as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in x0..x1 {
        let avg = (y0..y1).map(|y| field.get(x, y, 2)).sum::<f64>() / rows;
        lo = lo.min(avg);
        hi = hi.max(avg);
    }
    (lo, hi)
}

/// Position of the peak |q2| over an x-range on one row.
pub fn q2_peak_position(field: &QubitField, x0: usize, x1: usize, y: usize) -> usize {
    let mut best = 0.0;
    let mut pos = x0;
    for x in x0..x1 {
        let v = field.get(x, y, 2).abs();
        if v > best {
            best = v;
            pos = x;
        }
    }
    pos
}
