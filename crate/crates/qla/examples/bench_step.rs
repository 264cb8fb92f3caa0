use qla::evolution::{step_in_place, EvolutionPlan, PotentialMode};
use qla::field::QubitField;
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, MediumSpec};
use std::time::Instant;

fn main() {
    for (n, steps) in [(256usize, 300u64), (512, 100)] {
        let grid = LatticeGrid::new(n, n, 0.1).unwrap();
        let spec = MediumSpec::Cylinder {
            center: (n as f64 / 2.0, n as f64 / 2.0),
            diameter: n as f64 / 5.0,
            n_max: 3.0,
            boundary_width: 5.0,
            axes: Default::default(),
        };
        let media = sample_medium(&spec, grid).unwrap();
        let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
        let mut f = QubitField::new(grid, |x, y| {
            [(x as f64 * 0.1).sin(), 0.0, (y as f64 * 0.2).cos(), 0.0, 0.3, 0.0]
        })
        .unwrap();
        let t0 = Instant::now();
        for _ in 0..steps {
            step_in_place(&mut f, &plan);
        }
        let dt = t0.elapsed().as_secs_f64();
        println!("{n}x{n}: {:.2} ms/step ({steps} steps in {dt:.2}s)", dt / steps as f64 * 1e3);
    }
}
