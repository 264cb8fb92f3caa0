//! Command-line front end: run experiments, self-verify, demo the lossy
//! channel, and inspect snapshots.

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use qla::config::RunConfig;
use qla::diagnostics::{div_b, div_d, energy, peak_b, peak_d};
use qla::dissipation::{lossy_hamiltonians, success_probability, trotter_step, LossyMedium1D};
use qla::field::COMPONENTS;
use qla::media::read_raster;
use qla::snapshot::read_snapshot;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qla", version, about = "Qubit lattice algorithm for 2D Maxwell scattering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Override the config's step count.
        #[arg(long)]
        steps: Option<u64>,
    },
    /// Run the built-in verification suites; exits nonzero on failure.
    Verify,
    /// Emit an amplitude-decay time series for a lossy 1D medium mode.
    DemoLossy {
        #[arg(long)]
        eps_r: f64,
        #[arg(long)]
        eps_i: f64,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 1.0)]
        wavenumber: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print per-component extrema, energy and divergence maxima of a snapshot.
    Inspect {
        snapshot: PathBuf,
        /// Raster medium file; enables the D-field divergence report.
        #[arg(long)]
        media: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run { config, output_dir, steps } => {
            let mut cfg = RunConfig::load(&config)?;
            if let Some(steps) = steps {
                cfg.run.steps = steps;
            }
            if let Some(dir) = output_dir {
                cfg.run.output_dir = dir;
            }
            let out = cfg.run.output_dir.clone();
            let manifest = qla::driver::run(&cfg)?;
            println!(
                "run {} complete: {} snapshots in {}",
                manifest.run_id,
                manifest.snapshots.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let (results, ok) = qla::verify::run_all();
            for r in &results {
                println!("[{}] {}: {}", if r.passed { "pass" } else { "FAIL" }, r.name, r.detail);
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::DemoLossy { eps_r, eps_i, dt, steps, wavenumber, output } => {
            let medium = LossyMedium1D::new(eps_r, eps_i)?;
            let split = lossy_hamiltonians(&medium, wavenumber)?;
            // Launch on the damped branch (the forward-propagating mode).
            let mut psi = if split.gammas.is_empty() {
                let mut v = qla::dissipation::CVec::zeros(2);
                v[0] = Complex64::new(1.0, 0.0);
                v
            } else {
                split.u1.column(0).into_owned()
            };
            let mut rows = String::from("step,time,amplitude,p0\n");
            for s in 0..=steps {
                let norm = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                let tilde = split.u1.adjoint() * &psi;
                let normalized = &tilde / Complex64::new(norm.max(1e-300), 0.0);
                let (p0, _) = success_probability(&normalized, &split.gammas, dt);
                rows.push_str(&format!("{s},{:.6},{:.12e},{:.12e}\n", s as f64 * dt, norm, p0));
                if s < steps {
                    psi = trotter_step(&psi, &split, dt);
                }
            }
            match output {
                Some(path) => std::fs::write(path, rows)?,
                None => print!("{rows}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Inspect { snapshot, media } => {
            let (field, step) = read_snapshot(&snapshot)?;
            let grid = field.grid();
            println!(
                "snapshot: {}x{} grid, delta = {}, step = {step}",
                grid.nx(),
                grid.ny(),
                grid.delta()
            );
            const NAMES: [&str; COMPONENTS] = ["q0", "q1", "q2", "q3", "q4", "q5"];
            for (c, name) in NAMES.iter().enumerate() {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for s in field.amplitudes().chunks_exact(COMPONENTS) {
                    lo = lo.min(s[c]);
                    hi = hi.max(s[c]);
                }
                println!("  {name}: min {lo:+.6e}  max {hi:+.6e}");
            }
            println!("energy: {:.12e}", energy(&field));
            let b0 = peak_b(&field);
            if b0 > 0.0 {
                let rep = div_b(&field, b0)?;
                println!(
                    "max |div B| / peak|B|: {:.3e} at ({}, {})  (normalized by this snapshot's peak)",
                    rep.max_abs, rep.location.0, rep.location.1
                );
            } else {
                println!("max |div B|: field has no magnetic components");
            }
            if let Some(media_path) = media {
                let media = read_raster(&media_path, grid)?;
                let d0 = peak_d(&field, &media);
                if d0 > 0.0 {
                    let rep = div_d(&field, &media, d0)?;
                    println!(
                        "max |div D| / peak|D|: {:.3e} at ({}, {})",
                        rep.max_abs, rep.location.0, rep.location.1
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
