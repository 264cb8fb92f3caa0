use qla::diagnostics::{div_b, div_d, energy, peak_b, peak_d};
use qla::evolution::{step_in_place, EvolutionPlan, PotentialMode};
use qla::grid::LatticeGrid;
use qla::media::{sample_medium, MediumSpec};
use qla::pulse::init_pulse;
use qla::config::{Polarization, PulseConfig};

fn main() {
    let n = 512usize;
    let delta = 0.1;
    let grid = LatticeGrid::new(n, n, delta).unwrap();
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
    let b0 = peak_b(&f);
    let d0 = peak_d(&f, &media);
    let yc = 256usize;
    let mut max_drift = 0.0f64;
    let mut max_divb = 0.0f64;
    let mut max_divd = 0.0f64;
    let mut divb_loc = (0usize, 0usize);
    let mut interior_peak = 0.0f64;
    let mut interior_peak_step = 0u64;
    let t0 = std::time::Instant::now();
    for s in 1..=5200u64 {
        step_in_place(&mut f, &plan);
        if s % 100 == 0 {
            let drift = ((energy(&f) - e0) / e0).abs();
            max_drift = max_drift.max(drift);
            let db = div_b(&f, b0).unwrap();
            if db.max_abs > max_divb {
                max_divb = db.max_abs;
                divb_loc = db.location;
            }
            let dd = div_d(&f, &media, d0).unwrap();
            max_divd = max_divd.max(dd.max_abs);
            // interior |q2| max within r < 40 of center
            let mut imax = 0.0f64;
            for y in 216..296 {
                for x in 216..296 {
                    let dx = x as f64 - 256.0;
                    let dy = y as f64 - 256.0;
                    if dx * dx + dy * dy < 40.0 * 40.0 {
                        imax = imax.max(f.get(x, y, 2).abs());
                    }
                }
            }
            if imax > interior_peak {
                interior_peak = imax;
                interior_peak_step = s;
            }
        }
        if s % 400 == 0 {
            // windowed q2 extrema on the axis row and a far row
            let w = |x0: usize, x1: usize, y: usize| -> (f64, f64) {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for x in x0..x1 {
                    let v = f.get(x, y, 2);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                (lo, hi)
            };
            let left = w(40, 190, yc);
            let inside = w(210, 302, yc);
            let right = w(320, 440, yc);
            let vac = w(0, 512, 40);
            // vacuum-row pulse position (peak |q2|)
            let mut vx = 0usize;
            let mut vbest = 0.0;
            for x in 0..512 {
                let v = f.get(x, 40, 2).abs();
                if v > vbest {
                    vbest = v;
                    vx = x;
                }
            }
            // interior transmitted peak position on axis
            let mut ix = 0usize;
            let mut ibest = 0.0;
            for x in 206..307 {
                let v = f.get(x, yc, 2).abs();
                if v > ibest {
                    ibest = v;
                    ix = x;
                }
            }
            println!(
                "s={s:5} drift={max_drift:.2e} divB={max_divb:.3e}@{divb_loc:?} divD={max_divd:.2e} \
                 left[{:+.3},{:+.3}] in[{:+.3},{:+.3}] right[{:+.3},{:+.3}] vacrow[{:+.3},{:+.3}] vx={vx} ipk={ibest:.3}@{ix}",
                left.0, left.1, inside.0, inside.1, right.0, right.1, vac.0, vac.1
            );
        }
    }
    println!(
        "done in {:.1}s; max_drift={max_drift:.3e} max_divb={max_divb:.3e} at {divb_loc:?} max_divd={max_divd:.3e}",
        t0.elapsed().as_secs_f64()
    );
    println!("interior |q2| peak {interior_peak:.3} at step {interior_peak_step}");
    let r = ((divb_loc.0 as f64 - 256.0).powi(2) + (divb_loc.1 as f64 - 256.0).powi(2)).sqrt();
    println!("div_b argmax radius from center: {r:.1} (boundary layer R=50, w=5)");
}
