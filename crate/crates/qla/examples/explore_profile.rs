use qla::config::{Polarization, PulseConfig};
use qla::evolution::{step_in_place, EvolutionPlan, PotentialMode};
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, MediumSpec};
use qla::pulse::init_pulse;

fn main() {
    let grid = LatticeGrid::new(512, 512, 0.1).unwrap();
    let spec = MediumSpec::Cylinder {
        center: (256.0, 256.0), diameter: 100.0, n_max: 3.0,
        boundary_width: 5.0, axes: Default::default(),
    };
    let media = sample_medium(&spec, grid).unwrap();
    let plan = EvolutionPlan::new(&media, PotentialMode::HalfwayAndEnd);
    let pulse = PulseConfig { polarization: Polarization::EzBy, center_x: 110.0, width: 50.0, amplitude: 1.0 };
    let mut f = init_pulse(&pulse, grid, &media).unwrap();
    for s in 1..=4200u64 {
        step_in_place(&mut f, &plan);
        if s % 200 == 0 && (3000..=4200).contains(&s) {
            // y-averaged q2 profile near the axis, x in 260..320 step 4
            let prof: Vec<f64> = (260..320).step_by(4).map(|x| {
                (248..265).map(|y| f.get(x, y, 2)).sum::<f64>() / 17.0
            }).collect();
            let s_fmt: Vec<String> = prof.iter().map(|v| format!("{v:+.2}")).collect();
            println!("s={s}: x260..320/4: {}", s_fmt.join(" "));
        }
    }
}
