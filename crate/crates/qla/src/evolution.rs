//! The QLA time step: per-site collision rotations, interleaved
//! collide–stream sweeps in x and y, sparse gradient-coupling potentials,
//! and the full second-order advance.
//!
//! One step advances time by Δt = δ² (diffusion ordering); a vacuum pulse
//! therefore travels δ lattice units per step. The collide–stream sweeps
//! are exactly norm-preserving (orthogonal rotations and permutations);
//! the potentials are non-unitary at O(β²) and carry the refractive-index
//! gradient terms.
//!
//! Shift-direction convention: the sweeps below are written directly in
//! terms of [`Shift`] displacements. With `Shift::Plus` meaning "field
//! content moves toward +axis", a right-moving vacuum pulse is one with
//! q2 = −q4 (E_z = −B_y); this convention is pinned by the propagation
//! tests.

use crate::error::Result;
use crate::field::{Axis, QubitField, Shift, COMPONENTS};
use crate::grid::LatticeGrid;
use crate::media::RefractiveField;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Where in the step the gradient potentials act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PotentialMode {
    /// Apply once after both sweeps, at half the stored β angles.
    EndOnly,
    /// Apply after each sweep, at a quarter of the stored β angles, so the
    /// per-step total matches `EndOnly` (default).
    #[default]
    HalfwayAndEnd,
}

/// Per-site collision angles θ0 = δ/(4 n_x), θ1 = δ/(4 n_y), θ2 = δ/(4 n_z).
#[derive(Debug, Clone)]
pub struct CollisionAngles {
    pub theta0: Vec<f64>,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
}

impl CollisionAngles {
    pub fn from_media(media: &RefractiveField) -> Self {
        let grid = media.grid();
        let quarter = grid.delta() / 4.0;
        let angle = |c: usize| -> Vec<f64> {
            media.n_plane(c).iter().map(|n| quarter / n).collect()
        };
        Self { theta0: angle(0), theta1: angle(1), theta2: angle(2) }
    }
}

/// Per-site potential angles
/// β0 = δ²(∂n_y/∂x)/n_y², β1 = δ²(∂n_x/∂y)/n_x²,
/// β2 = δ²(∂n_z/∂x)/n_z², β3 = δ²(∂n_z/∂y)/n_z²,
/// with the gradients taken per unit physical length (grid spacing δ), so
/// β = δ · (index change per lattice unit) / n². Zero in homogeneous
/// regions.
#[derive(Debug, Clone)]
pub struct PotentialAngles {
    pub beta0: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub beta3: Vec<f64>,
}

impl PotentialAngles {
    pub fn from_media(media: &RefractiveField) -> Self {
        let grid = media.grid();
        let (nx, ny) = (grid.nx(), grid.ny());
        let delta = grid.delta();
        let mut beta0 = vec![0.0; grid.sites()];
        let mut beta1 = vec![0.0; grid.sites()];
        let mut beta2 = vec![0.0; grid.sites()];
        let mut beta3 = vec![0.0; grid.sites()];
        for y in 0..ny {
            for x in 0..nx {
                let i = y * nx + x;
                let ny_i = media.n(1, x, y);
                let nx_i = media.n(0, x, y);
                let nz_i = media.n(2, x, y);
                beta0[i] = delta * media.dn_dx(1, x, y) / (ny_i * ny_i);
                beta1[i] = delta * media.dn_dy(0, x, y) / (nx_i * nx_i);
                beta2[i] = delta * media.dn_dx(2, x, y) / (nz_i * nz_i);
                beta3[i] = delta * media.dn_dy(2, x, y) / (nz_i * nz_i);
            }
        }
        Self { beta0, beta1, beta2, beta3 }
    }
}

/// Precomputed per-site angles and trig tables for a run. Media are
/// time-independent, so this is built once.
#[derive(Debug, Clone)]
pub struct EvolutionPlan {
    grid: LatticeGrid,
    pub collision: CollisionAngles,
    pub potential: PotentialAngles,
    pub potential_mode: PotentialMode,
    potentials_enabled: bool,
    cos_t: [Vec<f64>; 3],
    sin_t: [Vec<f64>; 3],
    /// Trig of the per-application potential angle (β/2 for `EndOnly`,
    /// β/4 for `HalfwayAndEnd`).
    cos_p: [Vec<f64>; 4],
    sin_p: [Vec<f64>; 4],
}

fn trig(v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (v.iter().map(|a| a.cos()).collect(), v.iter().map(|a| a.sin()).collect())
}

impl EvolutionPlan {
    pub fn new(media: &RefractiveField, mode: PotentialMode) -> Self {
        Self::build(media, mode, true)
    }

    /// Collide–stream sweeps only; the gradient potentials are skipped.
    /// The resulting step is exactly norm-preserving.
    pub fn without_potentials(media: &RefractiveField) -> Self {
        Self::build(media, PotentialMode::EndOnly, false)
    }

    fn build(media: &RefractiveField, mode: PotentialMode, enabled: bool) -> Self {
        let collision = CollisionAngles::from_media(media);
        let potential = PotentialAngles::from_media(media);
        let (c0, s0) = trig(&collision.theta0);
        let (c1, s1) = trig(&collision.theta1);
        let (c2, s2) = trig(&collision.theta2);
        let scale = match mode {
            PotentialMode::EndOnly => 0.5,
            PotentialMode::HalfwayAndEnd => 0.25,
        };
        let eff = |b: &[f64]| -> (Vec<f64>, Vec<f64>) {
            let scaled: Vec<f64> = b.iter().map(|v| v * scale).collect();
            trig(&scaled)
        };
        let (pc0, ps0) = eff(&potential.beta0);
        let (pc1, ps1) = eff(&potential.beta1);
        let (pc2, ps2) = eff(&potential.beta2);
        let (pc3, ps3) = eff(&potential.beta3);
        Self {
            grid: media.grid(),
            collision,
            potential,
            potential_mode: mode,
            potentials_enabled: enabled,
            cos_t: [c0, c1, c2],
            sin_t: [s0, s1, s2],
            cos_p: [pc0, pc1, pc2, pc3],
            sin_p: [ps0, ps1, ps2, ps3],
        }
    }

    pub fn grid(&self) -> LatticeGrid {
        self.grid
    }

    pub fn potentials_enabled(&self) -> bool {
        self.potentials_enabled
    }
}

// --- per-site kernels ----------------------------------------------------

/// Rotates (q1,q5) by θ1 and (q2,q4) by θ2 at every site (x-collision).
/// `adjoint` applies the transpose (angle sign flip).
fn collide_x_kernel(
    field: &mut QubitField,
    cos1: &[f64],
    sin1: &[f64],
    cos2: &[f64],
    sin2: &[f64],
    adjoint: bool,
) {
    let nx = field.grid().nx();
    let sign = if adjoint { -1.0 } else { 1.0 };
    field
        .amplitudes_mut()
        .par_chunks_mut(nx * COMPONENTS)
        .enumerate()
        .for_each(|(y, row)| {
            let base = y * nx;
            for x in 0..nx {
                let (c1, s1) = (cos1[base + x], sign * sin1[base + x]);
                let (c2, s2) = (cos2[base + x], sign * sin2[base + x]);
                let o = x * COMPONENTS;
                let (q1, q2, q4, q5) = (row[o + 1], row[o + 2], row[o + 4], row[o + 5]);
                row[o + 1] = c1 * q1 - s1 * q5;
                row[o + 5] = s1 * q1 + c1 * q5;
                row[o + 2] = c2 * q2 - s2 * q4;
                row[o + 4] = s2 * q2 + c2 * q4;
            }
        });
}

/// Rotates (q0,q5) by θ0 and (q2,q3) by θ2 at every site (y-collision).
fn collide_y_kernel(
    field: &mut QubitField,
    cos0: &[f64],
    sin0: &[f64],
    cos2: &[f64],
    sin2: &[f64],
    adjoint: bool,
) {
    let nx = field.grid().nx();
    let sign = if adjoint { -1.0 } else { 1.0 };
    field
        .amplitudes_mut()
        .par_chunks_mut(nx * COMPONENTS)
        .enumerate()
        .for_each(|(y, row)| {
            let base = y * nx;
            for x in 0..nx {
                let (c0, s0) = (cos0[base + x], sign * sin0[base + x]);
                let (c2, s2) = (cos2[base + x], sign * sin2[base + x]);
                let o = x * COMPONENTS;
                let (q0, q2, q3, q5) = (row[o], row[o + 2], row[o + 3], row[o + 5]);
                row[o] = c0 * q0 + s0 * q5;
                row[o + 5] = -s0 * q0 + c0 * q5;
                row[o + 2] = c2 * q2 + s2 * q3;
                row[o + 3] = -s2 * q2 + c2 * q3;
            }
        });
}

/// Gradient coupling in x: pairs (q1,q5) through β0 and (q2,q4) through β2.
/// The sin entries feed q1 into q5 (+) and q2 into q4 (−) with the
/// compensating entries on the electric rows; the cos deficit on the
/// electric-row diagonal makes the operator non-unitary at O(β²).
fn potential_x_kernel(field: &mut QubitField, cb0: &[f64], sb0: &[f64], cb2: &[f64], sb2: &[f64]) {
    let nx = field.grid().nx();
    field
        .amplitudes_mut()
        .par_chunks_mut(nx * COMPONENTS)
        .enumerate()
        .for_each(|(y, row)| {
            let base = y * nx;
            for x in 0..nx {
                let (c0, s0) = (cb0[base + x], sb0[base + x]);
                let (c2, s2) = (cb2[base + x], sb2[base + x]);
                let o = x * COMPONENTS;
                let (q1, q2, q4, q5) = (row[o + 1], row[o + 2], row[o + 4], row[o + 5]);
                row[o + 1] = q1 - s0 * q5;
                row[o + 5] = s0 * q1 + c0 * q5;
                row[o + 2] = q2 + s2 * q4;
                row[o + 4] = -s2 * q2 + c2 * q4;
            }
        });
}

/// Gradient coupling in y: pairs (q0,q5) through β1 and (q2,q3) through β3.
fn potential_y_kernel(field: &mut QubitField, cb1: &[f64], sb1: &[f64], cb3: &[f64], sb3: &[f64]) {
    let nx = field.grid().nx();
    field
        .amplitudes_mut()
        .par_chunks_mut(nx * COMPONENTS)
        .enumerate()
        .for_each(|(y, row)| {
            let base = y * nx;
            for x in 0..nx {
                let (c1, s1) = (cb1[base + x], sb1[base + x]);
                let (c3, s3) = (cb3[base + x], sb3[base + x]);
                let o = x * COMPONENTS;
                let (q0, q2, q3, q5) = (row[o], row[o + 2], row[o + 3], row[o + 5]);
                row[o] = q0 + s1 * q5;
                row[o + 5] = -s1 * q0 + c1 * q5;
                row[o + 2] = q2 - s3 * q3;
                row[o + 3] = s3 * q2 + c3 * q3;
            }
        });
}

// --- public operations ----------------------------------------------------

pub fn collision_x(field: &QubitField, angles: &CollisionAngles, adjoint: bool) -> QubitField {
    let (c1, s1) = trig(&angles.theta1);
    let (c2, s2) = trig(&angles.theta2);
    let mut out = field.clone();
    collide_x_kernel(&mut out, &c1, &s1, &c2, &s2, adjoint);
    out
}

pub fn collision_y(field: &QubitField, angles: &CollisionAngles, adjoint: bool) -> QubitField {
    let (c0, s0) = trig(&angles.theta0);
    let (c2, s2) = trig(&angles.theta2);
    let mut out = field.clone();
    collide_y_kernel(&mut out, &c0, &s0, &c2, &s2, adjoint);
    out
}

/// Which component pair a stream operator moves: `P` is {q1,q4} along x and
/// {q0,q3} along y; `Q` is {q2,q5} along both axes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum StreamSet {
    P,
    Q,
}

/// One collide–stream element: a collision (or its adjoint) followed by a
/// one-site shift of a component subset.
#[derive(Clone, Copy)]
struct SweepOp {
    adjoint: bool,
    set: StreamSet,
    dir: Shift,
}

/// The 16-operator second-order sweep, in application order: four groups of
/// collide–shift–collide–shift, alternating stream subsets and directions
/// so the one-sided differences symmetrize to centered ones.
const SWEEP: [SweepOp; 8] = [
    SweepOp { adjoint: true, set: StreamSet::P, dir: Shift::Plus },
    SweepOp { adjoint: false, set: StreamSet::P, dir: Shift::Minus },
    SweepOp { adjoint: true, set: StreamSet::Q, dir: Shift::Minus },
    SweepOp { adjoint: false, set: StreamSet::Q, dir: Shift::Plus },
    SweepOp { adjoint: false, set: StreamSet::P, dir: Shift::Minus },
    SweepOp { adjoint: true, set: StreamSet::P, dir: Shift::Plus },
    SweepOp { adjoint: false, set: StreamSet::Q, dir: Shift::Plus },
    SweepOp { adjoint: true, set: StreamSet::Q, dir: Shift::Minus },
];

fn run_sweep(field: &mut QubitField, plan: &EvolutionPlan, axis: Axis, ops: &[SweepOp]) {
    for op in ops {
        match axis {
            Axis::X => collide_x_kernel(
                field,
                &plan.cos_t[1],
                &plan.sin_t[1],
                &plan.cos_t[2],
                &plan.sin_t[2],
                op.adjoint,
            ),
            Axis::Y => collide_y_kernel(
                field,
                &plan.cos_t[0],
                &plan.sin_t[0],
                &plan.cos_t[2],
                &plan.sin_t[2],
                op.adjoint,
            ),
        }
        let comps: &[usize] = match (axis, op.set) {
            (Axis::X, StreamSet::P) => &[1, 4],
            (Axis::Y, StreamSet::P) => &[0, 3],
            (_, StreamSet::Q) => &[2, 5],
        };
        field.shift_in_place(comps, axis, op.dir);
    }
}

/// Second-order collide–stream sweep along x.
pub fn unitary_sweep_x(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    sweep_x_in_place(&mut out, plan);
    out
}

pub fn sweep_x_in_place(field: &mut QubitField, plan: &EvolutionPlan) {
    run_sweep(field, plan, Axis::X, &SWEEP);
}

/// Second-order collide–stream sweep along y (streams {q0,q3} and {q2,q5}).
pub fn unitary_sweep_y(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    sweep_y_in_place(&mut out, plan);
    out
}

pub fn sweep_y_in_place(field: &mut QubitField, plan: &EvolutionPlan) {
    run_sweep(field, plan, Axis::Y, &SWEEP);
}

/// First collide–stream group of the x-sweep only (4 of 16 operators).
/// A first-order scheme advancing a quarter time step; kept for
/// order-of-accuracy verification.
pub fn sweep_x_first_order(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    run_sweep(&mut out, plan, Axis::X, &SWEEP[..2]);
    out
}

/// Applies the x-gradient potential once at the plan's per-application angle.
pub fn potential_x(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    potential_x_in_place(&mut out, plan);
    out
}

pub fn potential_x_in_place(field: &mut QubitField, plan: &EvolutionPlan) {
    potential_x_kernel(field, &plan.cos_p[0], &plan.sin_p[0], &plan.cos_p[2], &plan.sin_p[2]);
}

/// Applies the y-gradient potential once at the plan's per-application angle.
pub fn potential_y(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    potential_y_in_place(&mut out, plan);
    out
}

pub fn potential_y_in_place(field: &mut QubitField, plan: &EvolutionPlan) {
    potential_y_kernel(field, &plan.cos_p[1], &plan.sin_p[1], &plan.cos_p[3], &plan.sin_p[3]);
}

/// Advances the field one time step (Δt = δ²).
pub fn step(field: &QubitField, plan: &EvolutionPlan) -> QubitField {
    let mut out = field.clone();
    step_in_place(&mut out, plan);
    out
}

pub fn step_in_place(field: &mut QubitField, plan: &EvolutionPlan) {
    match (plan.potentials_enabled, plan.potential_mode) {
        (false, _) => {
            sweep_x_in_place(field, plan);
            sweep_y_in_place(field, plan);
        }
        (true, PotentialMode::EndOnly) => {
            sweep_x_in_place(field, plan);
            sweep_y_in_place(field, plan);
            potential_x_in_place(field, plan);
            potential_y_in_place(field, plan);
        }
        (true, PotentialMode::HalfwayAndEnd) => {
            sweep_x_in_place(field, plan);
            potential_x_in_place(field, plan);
            potential_y_in_place(field, plan);
            sweep_y_in_place(field, plan);
            potential_x_in_place(field, plan);
            potential_y_in_place(field, plan);
        }
    }
}

/// Runs `steps` steps, checking field finiteness every `check_every` steps.
pub fn run_steps(
    field: &mut QubitField,
    plan: &EvolutionPlan,
    steps: u64,
    check_every: u64,
) -> Result<()> {
    for s in 0..steps {
        step_in_place(field, plan);
        if check_every > 0 && (s + 1) % check_every == 0 && !field.is_finite() {
            return Err(crate::error::QlaError::NonFiniteField { step: s + 1 });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::{sample_medium, MediumSpec};

    fn vacuum_plan(nx: usize, ny: usize, delta: f64) -> EvolutionPlan {
        let grid = LatticeGrid::new(nx, ny, delta).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
        EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd)
    }

    #[test]
    fn collision_angle_values() {
        let grid = LatticeGrid::new(8, 8, 0.1).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 2.0 }, grid).unwrap();
        let a = CollisionAngles::from_media(&media);
        assert!((a.theta1[0] - 0.0125).abs() < 1e-15);
        let vac = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
        let a = CollisionAngles::from_media(&vac);
        assert!((a.theta0[0] - 0.025).abs() < 1e-15);
    }

    #[test]
    fn zero_angle_collision_is_identity() {
        let grid = LatticeGrid::new(8, 8, 0.1).unwrap();
        let f = QubitField::new(grid, |x, y| {
            [x as f64, y as f64, 1.0, -2.0, 0.5, 0.25]
        })
        .unwrap();
        let zero = CollisionAngles {
            theta0: vec![0.0; grid.sites()],
            theta1: vec![0.0; grid.sites()],
            theta2: vec![0.0; grid.sites()],
        };
        assert_eq!(collision_x(&f, &zero, false), f);
        assert_eq!(collision_y(&f, &zero, false), f);
    }

    #[test]
    fn collision_adjoint_inverts() {
        let grid = LatticeGrid::new(8, 8, 0.1).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 1.3 }, grid).unwrap();
        let angles = CollisionAngles::from_media(&media);
        let f = QubitField::new(grid, |x, y| {
            [0.3 * x as f64, -0.2, 0.9, 1.1 * y as f64, -0.4, 0.6]
        })
        .unwrap();
        for (g, name) in [
            (collision_x(&collision_x(&f, &angles, false), &angles, true), "x"),
            (collision_y(&collision_y(&f, &angles, false), &angles, true), "y"),
        ] {
            for (a, b) in f.amplitudes().iter().zip(g.amplitudes()) {
                assert!((a - b).abs() < 1e-15, "C_{name} adjoint failed");
            }
        }
    }

    #[test]
    fn constant_vacuum_field_is_sweep_fixed_point() {
        let plan = vacuum_plan(8, 8, 0.1);
        let f = QubitField::new(plan.grid(), |_, _| [0.1, -0.2, 0.3, 0.4, -0.5, 0.6]).unwrap();
        let gx = unitary_sweep_x(&f, &plan);
        let gy = unitary_sweep_y(&f, &plan);
        for (a, b) in f.amplitudes().iter().zip(gx.amplitudes()) {
            assert!((a - b).abs() < 1e-14);
        }
        for (a, b) in f.amplitudes().iter().zip(gy.amplitudes()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sweeps_preserve_norm() {
        let grid = LatticeGrid::new(32, 16, 0.1).unwrap();
        let spec = MediumSpec::Cylinder {
            center: (16.0, 8.0),
            diameter: 4.0,
            n_max: 2.0,
            boundary_width: 1.0,
            axes: Default::default(),
        };
        let media = sample_medium(&spec, grid).unwrap();
        let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
        let f = QubitField::new(grid, |x, y| {
            let u = (x as f64 * 0.41).sin();
            let v = (y as f64 * 0.77).cos();
            [u, v, u * v, u + v, u - v, 0.3 * u]
        })
        .unwrap();
        let n0 = f.l2_norm_sq();
        let g = unitary_sweep_y(&unitary_sweep_x(&f, &plan), &plan);
        assert!(((g.l2_norm_sq() - n0) / n0).abs() < 1e-12);
    }

    #[test]
    fn potential_identity_cases() {
        // Zero angles and vacuum media both give the identity.
        let plan = vacuum_plan(8, 8, 0.1);
        let f = QubitField::new(plan.grid(), |x, y| {
            [x as f64, y as f64, 1.0, 2.0, 3.0, 4.0]
        })
        .unwrap();
        assert_eq!(potential_x(&f, &plan), f);
        assert_eq!(potential_y(&f, &plan), f);
    }

    #[test]
    fn potential_x_on_unit_e2() {
        // With uniform β2 the q4 row picks up −sin(h2) from q2, where h2 is
        // the per-application angle (β2/2 in end-only mode).
        let grid = LatticeGrid::new(8, 8, 0.1).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
        let mut plan = EvolutionPlan::new(&media, PotentialMode::EndOnly);
        let beta2 = 0.04;
        plan.potential.beta2 = vec![beta2; grid.sites()];
        let rebuilt = {
            let scaled: Vec<f64> = plan.potential.beta2.iter().map(|b| b * 0.5).collect();
            (scaled.iter().map(|a| a.cos()).collect::<Vec<_>>(),
             scaled.iter().map(|a| a.sin()).collect::<Vec<_>>())
        };
        plan.cos_p[2] = rebuilt.0;
        plan.sin_p[2] = rebuilt.1;

        let e2 = QubitField::new(grid, |_, _| [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = potential_x(&e2, &plan);
        let h2 = beta2 / 2.0;
        assert!((g.get(0, 0, 4) - (-h2.sin())).abs() < 1e-15);
        assert!((g.get(0, 0, 2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn potential_y_row5_sign() {
        // Row q5 couples to q0 with a −sin coefficient.
        let grid = LatticeGrid::new(8, 8, 0.1).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
        let mut plan = EvolutionPlan::new(&media, PotentialMode::EndOnly);
        let beta1: f64 = 0.02;
        plan.sin_p[1] = vec![(beta1 / 2.0).sin(); grid.sites()];
        plan.cos_p[1] = vec![(beta1 / 2.0).cos(); grid.sites()];
        let e0 = QubitField::new(grid, |_, _| [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let g = potential_y(&e0, &plan);
        assert!((g.get(0, 0, 5) - (-(beta1 / 2.0).sin())).abs() < 1e-15);
    }

    #[test]
    fn step_zero_field_stays_zero() {
        let plan = vacuum_plan(8, 8, 0.1);
        let f = QubitField::zeros(plan.grid());
        let g = step(&f, &plan);
        assert!(g.amplitudes().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn step_is_homogeneous() {
        let grid = LatticeGrid::new(16, 12, 0.1).unwrap();
        let spec = MediumSpec::Cylinder {
            center: (8.0, 6.0),
            diameter: 3.0,
            n_max: 2.0,
            boundary_width: 0.7,
            axes: Default::default(),
        };
        let media = sample_medium(&spec, grid).unwrap();
        let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
        let f = QubitField::new(grid, |x, y| {
            let u = (0.37 * x as f64).sin() * (0.21 * y as f64).cos();
            [u, -u, 0.5 * u, u * u, 0.1, -0.3 * u]
        })
        .unwrap();
        let mut doubled = f.clone();
        for a in doubled.amplitudes_mut() {
            *a *= 2.0;
        }
        let g = step(&f, &plan);
        let g2 = step(&doubled, &plan);
        // Scaling by a power of two is exact in binary floating point.
        for (a, b) in g.amplitudes().iter().zip(g2.amplitudes()) {
            assert_eq!(2.0 * a, *b);
        }
    }

    #[test]
    fn vacuum_pulse_moves_plus_x_at_speed_delta() {
        let delta = 0.1;
        let grid = LatticeGrid::new(256, 4, delta).unwrap();
        let media = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
        let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
        let x0 = 64.0;
        let sigma = 8.0;
        let mut f = QubitField::new(grid, |x, _| {
            let g = (-((x as f64 - x0) * (x as f64 - x0)) / (2.0 * sigma * sigma)).exp();
            [0.0, 0.0, -g, 0.0, g, 0.0]
        })
        .unwrap();
        let centroid = |f: &QubitField| -> f64 {
            let mut num = 0.0;
            let mut den = 0.0;
            for x in 0..256 {
                let mut w = 0.0;
                for c in 0..6 {
                    let a = f.get(x, 0, c);
                    w += a * a;
                }
                num += x as f64 * w;
                den += w;
            }
            num / den
        };
        let c0 = centroid(&f);
        let steps = 800;
        for _ in 0..steps {
            step_in_place(&mut f, &plan);
        }
        let moved = centroid(&f) - c0;
        let expected = delta * steps as f64;
        assert!(
            (moved - expected).abs() < 0.05 * expected,
            "moved {moved:.2}, expected {expected:.2}"
        );
    }
}
