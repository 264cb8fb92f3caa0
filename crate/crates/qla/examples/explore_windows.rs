use qla::config::{Polarization, PulseConfig};
use qla::diagnostics::energy;
use qla::evolution::{step_in_place, EvolutionPlan, PotentialMode};
use qla::field::QubitField;
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, MediumSpec};
use qla::pulse::init_pulse;

fn window_extrema(f: &QubitField, x0: usize, x1: usize, y: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in x0..x1 {
        let v = f.get(x, y, 2);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

fn main() {
    let mode = std::env::args().nth(1).unwrap_or_else(|| "windows".into());
    if mode == "windows" {
        let grid = LatticeGrid::new(512, 512, 0.1).unwrap();
        let spec = MediumSpec::Cylinder {
            center: (256.0, 256.0),
            diameter: 100.0,
            n_max: 3.0,
            boundary_width: 5.0,
            axes: Default::default(),
        };
        let media = sample_medium(&spec, grid).unwrap();
        let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
        let pulse = PulseConfig {
            polarization: Polarization::EzBy,
            center_x: 110.0,
            width: 50.0,
            amplitude: 1.0,
        };
        let mut f = init_pulse(&pulse, grid, &media).unwrap();
        for s in 1..=4600u64 {
            step_in_place(&mut f, &plan);
            if s % 200 == 0 && s >= 2400 {
                let back_inside = window_extrema(&f, 276, 304, 256);
                let right_near = window_extrema(&f, 310, 370, 256);
                println!(
                    "s={s}: back_inside[{:+.3},{:+.3}] right_near[{:+.3},{:+.3}]",
                    back_inside.0, back_inside.1, right_near.0, right_near.1
                );
            }
        }
    } else {
        // drift-ratio estimate: same physics at delta = 0.1 and 0.01
        for (delta, steps, cadence) in [(0.1, 2200u64, 50u64), (0.01, 22000, 500)] {
            let grid = LatticeGrid::new(512, 512, delta).unwrap();
            let spec = MediumSpec::Cylinder {
                center: (256.0, 256.0),
                diameter: 100.0,
                n_max: 3.0,
                boundary_width: 5.0,
                axes: Default::default(),
            };
            let media = sample_medium(&spec, grid).unwrap();
            let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
            let pulse = PulseConfig {
                polarization: Polarization::EzBy,
                center_x: 110.0,
                width: 50.0,
                amplitude: 1.0,
            };
            let mut f = init_pulse(&pulse, grid, &media).unwrap();
            let e0 = energy(&f);
            let mut max_drift = 0.0f64;
            for s in 1..=steps {
                step_in_place(&mut f, &plan);
                if s % cadence == 0 {
                    max_drift = max_drift.max(((energy(&f) - e0) / e0).abs());
                }
            }
            println!("delta={delta}: max drift over {steps} steps = {max_drift:.4e}");
        }
    }
}
