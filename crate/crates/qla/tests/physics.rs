//! Physics-level integration checks beyond the acceptance criteria:
//! propagation isotropy, polarization sector structure, and the
//! self-generated field components in scattering.

use qla::config::{Polarization, PulseConfig};
use qla::diagnostics::{div_b, div_d, peak_b, peak_d};
use qla::evolution::{step_in_place, EvolutionPlan, PotentialMode};
use qla::field::QubitField;
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, AxisMask, MediumSpec};
use qla::pulse::init_pulse;

fn energy_centroid_x(f: &QubitField, nx: usize) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for x in 0..nx {
        let mut w = 0.0;
        for c in 0..6 {
            let a = f.get(x, 0, c);
            w += a * a;
        }
        num += x as f64 * w;
        den += w;
    }
    num / den
}

#[test]
fn vacuum_propagation_is_isotropic() {
    let delta = 0.1;
    let steps = 1500u64;

    // +x moving pulse on a thin strip
    let grid = LatticeGrid::new(512, 4, delta).unwrap();
    let media = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
    let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
    let gauss = |u: f64| (-(u * u) / (2.0 * 12.0 * 12.0)).exp();
    let mut fx = QubitField::new(grid, |x, _| {
        let g = gauss(x as f64 - 120.0);
        [0.0, 0.0, -g, 0.0, g, 0.0]
    })
    .unwrap();
    let c0 = energy_centroid_x(&fx, 512);
    for _ in 0..steps {
        step_in_place(&mut fx, &plan);
    }
    let vx = (energy_centroid_x(&fx, 512) - c0) / steps as f64;

    // +y moving pulse: the (q2, q3) pair with q3 = q2
    let grid_y = LatticeGrid::new(4, 512, delta).unwrap();
    let media_y = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid_y).unwrap();
    let plan_y = EvolutionPlan::new(&media_y, PotentialMode::HalfwayAndEnd);
    let mut fy = QubitField::new(grid_y, |_, y| {
        let g = gauss(y as f64 - 120.0);
        [0.0, 0.0, g, g, 0.0, 0.0]
    })
    .unwrap();
    let centroid_y = |f: &QubitField| -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for y in 0..512 {
            let mut w = 0.0;
            for c in 0..6 {
                let a = f.get(0, y, c);
                w += a * a;
            }
            num += y as f64 * w;
            den += w;
        }
        num / den
    };
    let c0 = centroid_y(&fy);
    for _ in 0..steps {
        step_in_place(&mut fy, &plan_y);
    }
    let vy = (centroid_y(&fy) - c0) / steps as f64;

    assert!(vx > 0.0 && vy > 0.0, "both pulses must advance (vx = {vx:.4}, vy = {vy:.4})");
    let anisotropy = (vx / vy - 1.0).abs();
    assert!(anisotropy < 0.005, "speed anisotropy {anisotropy:.4} exceeds 0.5%");
}

#[test]
fn ez_run_keeps_transverse_sector_empty_and_generates_bx() {
    // E_z scattering lives in {q2, q3, q4}; q0, q1, q5 stay exactly zero.
    // With a 2D scatterer the initially-zero B_x = q3 must develop to keep
    // div B small, while a vacuum run leaves it at rounding level.
    let grid = LatticeGrid::new(192, 128, 0.1).unwrap();
    let spec = MediumSpec::Cylinder {
        center: (112.0, 64.0),
        diameter: 36.0,
        n_max: 3.0,
        boundary_width: 4.0,
        axes: AxisMask::All,
    };
    let media = sample_medium(&spec, grid).unwrap();
    let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
    let pulse = PulseConfig {
        polarization: Polarization::EzBy,
        center_x: 44.0,
        width: 22.0,
        amplitude: 1.0,
    };
    let mut f = init_pulse(&pulse, grid, &media).unwrap();
    for _ in 0..900 {
        step_in_place(&mut f, &plan);
    }
    let mut max_inactive = 0.0f64;
    let mut max_bx = 0.0f64;
    for site in f.amplitudes().chunks_exact(6) {
        max_inactive = max_inactive.max(site[0].abs()).max(site[1].abs()).max(site[5].abs());
        max_bx = max_bx.max(site[3].abs());
    }
    assert_eq!(max_inactive, 0.0, "q0/q1/q5 must stay structurally zero");
    assert!(max_bx > 1e-3, "scattering must generate B_x (got {max_bx:.2e})");

    // vacuum-only control: B_x stays at exactly zero
    let vac = sample_medium(&MediumSpec::Homogeneous { n: 1.0 }, grid).unwrap();
    let vplan = EvolutionPlan::new(&vac, PotentialMode::HalfwayAndEnd);
    let mut fv = init_pulse(&pulse, grid, &vac).unwrap();
    for _ in 0..900 {
        step_in_place(&mut fv, &vplan);
    }
    let max_bx_vac = fv.amplitudes().chunks_exact(6).map(|s| s[3].abs()).fold(0.0, f64::max);
    assert!(max_bx_vac <= 1e-15, "vacuum run grew B_x = {max_bx_vac:.2e}");
}

#[test]
fn ey_run_generates_ex_and_keeps_div_b_exact() {
    // E_y polarization: the scattered B_z = q5 stays the only magnetic
    // component, so div B vanishes identically, while a non-zero E_x = q0/n_x
    // develops in the attempt to preserve div D.
    let grid = LatticeGrid::new(192, 128, 0.1).unwrap();
    let spec = MediumSpec::Cylinder {
        center: (112.0, 64.0),
        diameter: 36.0,
        n_max: 2.5,
        boundary_width: 4.0,
        axes: AxisMask::All,
    };
    let media = sample_medium(&spec, grid).unwrap();
    let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
    let pulse = PulseConfig {
        polarization: Polarization::EyBz,
        center_x: 44.0,
        width: 22.0,
        amplitude: 1.0,
    };
    let mut f = init_pulse(&pulse, grid, &media).unwrap();
    let b0 = peak_b(&f);
    let d0 = peak_d(&f, &media);
    let mut max_div_b = 0.0f64;
    let mut max_div_d = 0.0f64;
    for s in 1..=900u64 {
        step_in_place(&mut f, &plan);
        if s % 100 == 0 {
            max_div_b = max_div_b.max(div_b(&f, b0).unwrap().max_abs);
            max_div_d = max_div_d.max(div_d(&f, &media, d0).unwrap().max_abs);
        }
    }
    let mut max_e_sector = 0.0f64;
    let mut max_ex = 0.0f64;
    for site in f.amplitudes().chunks_exact(6) {
        max_e_sector = max_e_sector.max(site[2].abs()).max(site[3].abs()).max(site[4].abs());
        max_ex = max_ex.max(site[0].abs());
    }
    assert_eq!(max_e_sector, 0.0, "q2/q3/q4 must stay structurally zero");
    assert!(max_ex > 1e-3, "scattering must generate E_x (got {max_ex:.2e})");
    assert!(max_div_b <= 1e-13, "div B must be exact, got {max_div_b:.2e}");
    // div D is tracked and stays a small fraction of the initial peak;
    // regression band measured on this configuration.
    assert!(
        max_div_d > 1e-6 && max_div_d < 0.05,
        "div D tracking out of regression band: {max_div_d:.3e}"
    );
}

#[test]
fn scaling_initial_amplitude_scales_step_bitwise() {
    let grid = LatticeGrid::new(64, 48, 0.1).unwrap();
    let spec = MediumSpec::Cylinder {
        center: (40.0, 24.0),
        diameter: 12.0,
        n_max: 2.0,
        boundary_width: 2.0,
        axes: AxisMask::All,
    };
    let media = sample_medium(&spec, grid).unwrap();
    let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
    let base = PulseConfig {
        polarization: Polarization::EzBy,
        center_x: 14.0,
        width: 8.0,
        amplitude: 0.5,
    };
    let doubled = PulseConfig { amplitude: 1.0, ..base };
    let mut f1 = init_pulse(&base, grid, &media).unwrap();
    let mut f2 = init_pulse(&doubled, grid, &media).unwrap();
    for _ in 0..50 {
        step_in_place(&mut f1, &plan);
        step_in_place(&mut f2, &plan);
    }
    for (a, b) in f1.amplitudes().iter().zip(f2.amplitudes()) {
        assert_eq!(2.0 * a, *b);
    }
}
