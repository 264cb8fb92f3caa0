//! Refractive-index fields for the dielectric geometries, their spatial
//! derivatives, and the map between physical fields (E, H) and lattice
//! variables Q.

use crate::error::{QlaError, Result};
use crate::field::{QubitField, COMPONENTS};
use crate::grid::LatticeGrid;
use serde::{Deserialize, Serialize};

/// Which of the three index components a geometry modifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AxisMask {
    /// Isotropic scatterer: n_x = n_y = n_z (default).
    #[default]
    All,
    XOnly,
    YOnly,
    ZOnly,
}

impl AxisMask {
    fn applies(self, component: usize) -> bool {
        matches!(
            (self, component),
            (AxisMask::All, _) | (AxisMask::XOnly, 0) | (AxisMask::YOnly, 1) | (AxisMask::ZOnly, 2)
        )
    }
}

/// Dielectric geometry description.
///
/// Profiles sit on a vacuum (n = 1) background. Lengths are in lattice units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MediumSpec {
    Homogeneous {
        n: f64,
    },
    /// Smooth cylinder: n(r) = 1 + (n_max−1)·(1 − tanh((r−R)/w))/2 with
    /// R = diameter/2 and w = boundary_width. Half-height at r = R; the
    /// 1.02→2.98 transition spans ≈ 4.6 w.
    Cylinder {
        center: (f64, f64),
        diameter: f64,
        n_max: f64,
        boundary_width: f64,
        #[serde(default)]
        axes: AxisMask,
    },
    /// Radially linear cone: n = n_max at the apex, 1 at the base edge.
    Cone {
        center: (f64, f64),
        base_diameter: f64,
        n_max: f64,
        #[serde(default)]
        axes: AxisMask,
    },
    /// Raster file of per-site indices (see `media::read_raster`).
    Raster {
        path: std::path::PathBuf,
    },
}

/// Per-site refractive indices n_x, n_y, n_z and their spatial derivatives
/// (index change per lattice unit). Immutable once built; safe to share.
#[derive(Debug, Clone)]
pub struct RefractiveField {
    grid: LatticeGrid,
    /// n[c][y*nx + x] for c in {x, y, z}
    n: [Vec<f64>; 3],
    /// dn_dx[c], dn_dy[c]: derivative per lattice unit
    dn_dx: [Vec<f64>; 3],
    dn_dy: [Vec<f64>; 3],
}

impl RefractiveField {
    pub fn grid(&self) -> LatticeGrid {
        self.grid
    }

    #[inline]
    pub fn n(&self, component: usize, x: usize, y: usize) -> f64 {
        self.n[component][y * self.grid.nx() + x]
    }

    #[inline]
    pub fn dn_dx(&self, component: usize, x: usize, y: usize) -> f64 {
        self.dn_dx[component][y * self.grid.nx() + x]
    }

    #[inline]
    pub fn dn_dy(&self, component: usize, x: usize, y: usize) -> f64 {
        self.dn_dy[component][y * self.grid.nx() + x]
    }

    pub fn n_plane(&self, component: usize) -> &[f64] {
        &self.n[component]
    }

    /// True if every site of every component is vacuum to within `tol`.
    pub fn is_vacuum(&self, tol: f64) -> bool {
        self.n.iter().all(|p| p.iter().all(|&v| (v - 1.0).abs() <= tol))
    }

    /// Builds a field from raw index planes (n_x, n_y, n_z), reconstructing
    /// derivatives by periodic central differences.
    pub fn from_planes(grid: LatticeGrid, planes: [Vec<f64>; 3]) -> Result<Self> {
        let (nx, ny) = (grid.nx(), grid.ny());
        let sites = grid.sites();
        for p in &planes {
            if p.len() != sites {
                return Err(QlaError::ShapeMismatch("index plane size".into()));
            }
        }
        let central = |plane: &[f64], along_x: bool| -> Vec<f64> {
            let mut d = vec![0.0; sites];
            for y in 0..ny {
                for x in 0..nx {
                    let (hi, lo) = if along_x {
                        (y * nx + (x + 1) % nx, y * nx + (x + nx - 1) % nx)
                    } else {
                        (((y + 1) % ny) * nx + x, ((y + ny - 1) % ny) * nx + x)
                    };
                    d[y * nx + x] = (plane[hi] - plane[lo]) / 2.0;
                }
            }
            d
        };
        let field = Self {
            grid,
            dn_dx: [
                central(&planes[0], true),
                central(&planes[1], true),
                central(&planes[2], true),
            ],
            dn_dy: [
                central(&planes[0], false),
                central(&planes[1], false),
                central(&planes[2], false),
            ],
            n: planes,
        };
        field.validate()
    }

    fn validate(self) -> Result<Self> {
        for c in 0..3 {
            if self.n[c].iter().any(|v| !(*v >= 1.0 - 1e-12) || !v.is_finite()) {
                return Err(QlaError::InvalidMedium(format!(
                    "index component {c} below vacuum or non-finite"
                )));
            }
            if self.dn_dx[c].iter().chain(self.dn_dy[c].iter()).any(|v| !v.is_finite()) {
                return Err(QlaError::InvalidMedium(format!(
                    "non-finite derivative in component {c}"
                )));
            }
        }
        Ok(self)
    }
}

/// Samples a medium geometry onto the grid, with analytic derivatives for
/// the built-in profiles and periodic central differences for raster input.
pub fn sample_medium(spec: &MediumSpec, grid: LatticeGrid) -> Result<RefractiveField> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let sites = grid.sites();
    let mut field = RefractiveField {
        grid,
        n: [vec![1.0; sites], vec![1.0; sites], vec![1.0; sites]],
        dn_dx: [vec![0.0; sites], vec![0.0; sites], vec![0.0; sites]],
        dn_dy: [vec![0.0; sites], vec![0.0; sites], vec![0.0; sites]],
    };

    match spec {
        MediumSpec::Homogeneous { n } => {
            if *n < 1.0 {
                return Err(QlaError::InvalidMedium(format!("n = {n} below vacuum")));
            }
            for c in 0..3 {
                field.n[c].fill(*n);
            }
        }
        MediumSpec::Cylinder { center, diameter, n_max, boundary_width, axes } => {
            check_profile(*n_max, *diameter, *boundary_width)?;
            let radius = diameter / 2.0;
            // Require the full transition layer inside the grid.
            let extent = radius + 4.0 * boundary_width;
            check_bounds(*center, extent, nx, ny)?;
            fill_profile(&mut field, *axes, nx, ny, |x, y| {
                let dx = x - center.0;
                let dy = y - center.1;
                let r = (dx * dx + dy * dy).sqrt();
                let t = ((r - radius) / boundary_width).tanh();
                let n = 1.0 + (n_max - 1.0) * (1.0 - t) / 2.0;
                // dn/dr = −(n_max−1)/(2w) · sech²((r−R)/w)
                let sech2 = 1.0 - t * t;
                let dndr = -(n_max - 1.0) / (2.0 * boundary_width) * sech2;
                if r > 0.0 {
                    (n, dndr * dx / r, dndr * dy / r)
                } else {
                    (n, 0.0, 0.0)
                }
            });
        }
        MediumSpec::Cone { center, base_diameter, n_max, axes } => {
            check_profile(*n_max, *base_diameter, 1.0)?;
            let radius = base_diameter / 2.0;
            check_bounds(*center, radius, nx, ny)?;
            let slope = -(n_max - 1.0) / radius;
            fill_profile(&mut field, *axes, nx, ny, |x, y| {
                let dx = x - center.0;
                let dy = y - center.1;
                let r = (dx * dx + dy * dy).sqrt();
                if r >= radius || r == 0.0 {
                    let n = if r == 0.0 { *n_max } else { 1.0 };
                    (n, 0.0, 0.0)
                } else {
                    let n = n_max + slope * r;
                    (n, slope * dx / r, slope * dy / r)
                }
            });
        }
        MediumSpec::Raster { path } => {
            return read_raster(path, grid);
        }
    }
    field.validate()
}

fn check_profile(n_max: f64, diameter: f64, width: f64) -> Result<()> {
    if n_max < 1.0 {
        return Err(QlaError::InvalidMedium(format!("n_max = {n_max} below vacuum")));
    }
    if diameter <= 0.0 || width <= 0.0 {
        return Err(QlaError::InvalidMedium(
            "diameter and boundary_width must be positive".into(),
        ));
    }
    Ok(())
}

fn check_bounds(center: (f64, f64), extent: f64, nx: usize, ny: usize) -> Result<()> {
    if center.0 - extent < 0.0
        || center.0 + extent > (nx - 1) as f64
        || center.1 - extent < 0.0
        || center.1 + extent > (ny - 1) as f64
    {
        return Err(QlaError::GeometryOutOfBounds(format!(
            "center {center:?} with extent {extent:.1} exceeds {nx}x{ny} grid"
        )));
    }
    Ok(())
}

fn fill_profile<F>(field: &mut RefractiveField, axes: AxisMask, nx: usize, ny: usize, profile: F)
where
    F: Fn(f64, f64) -> (f64, f64, f64),
{
    for y in 0..ny {
        for x in 0..nx {
            let (n, dndx, dndy) = profile(x as f64, y as f64);
            let i = y * nx + x;
            for c in 0..3 {
                if axes.applies(c) {
                    field.n[c][i] = n;
                    field.dn_dx[c][i] = dndx;
                    field.dn_dy[c][i] = dndy;
                }
            }
        }
    }
}

/// Dyson map: Q = (n_x E_x, n_y E_y, n_z E_z, H_x, H_y, H_z) with μ0 = 1.
///
/// `e` and `h` hold per-site 3-vectors indexed `[(y*nx + x)*3 + i]`.
pub fn dyson_map(e: &[f64], h: &[f64], media: &RefractiveField) -> Result<QubitField> {
    let grid = media.grid();
    let sites = grid.sites();
    if e.len() != sites * 3 || h.len() != sites * 3 {
        return Err(QlaError::ShapeMismatch(format!(
            "expected {} E and H values, got {} and {}",
            sites * 3,
            e.len(),
            h.len()
        )));
    }
    let mut amplitudes = vec![0.0; sites * COMPONENTS];
    for s in 0..sites {
        for i in 0..3 {
            amplitudes[s * COMPONENTS + i] = media.n[i][s] * e[s * 3 + i];
            amplitudes[s * COMPONENTS + 3 + i] = h[s * 3 + i];
        }
    }
    QubitField::from_amplitudes(grid, amplitudes)
}

/// Inverts the Dyson map: E_i = q_i / n_i, H = (q3, q4, q5).
pub fn inverse_dyson(field: &QubitField, media: &RefractiveField) -> (Vec<f64>, Vec<f64>) {
    let sites = field.grid().sites();
    let amps = field.amplitudes();
    let mut e = vec![0.0; sites * 3];
    let mut h = vec![0.0; sites * 3];
    for s in 0..sites {
        for i in 0..3 {
            e[s * 3 + i] = amps[s * COMPONENTS + i] / media.n[i][s];
            h[s * 3 + i] = amps[s * COMPONENTS + 3 + i];
        }
    }
    (e, h)
}

// --- raster medium file -------------------------------------------------
//
// Layout (little endian): magic "QLAM", u32 version = 1, u32 nx, u32 ny,
// u32 ncomp (1 = isotropic, 3 = per-axis), then ncomp planes of nx*ny f64
// (component-major, row-major within a plane), then CRC32 of all preceding
// bytes. Derivatives are reconstructed by periodic central differences.

pub const RASTER_MAGIC: &[u8; 4] = b"QLAM";
pub const RASTER_VERSION: u32 = 1;

pub fn write_raster(
    path: &std::path::Path,
    grid: LatticeGrid,
    planes: &[&[f64]],
) -> Result<()> {
    if planes.len() != 1 && planes.len() != 3 {
        return Err(QlaError::InvalidMedium("raster needs 1 or 3 planes".into()));
    }
    let mut bytes = Vec::with_capacity(16 + planes.len() * grid.sites() * 8 + 4);
    bytes.extend_from_slice(RASTER_MAGIC);
    bytes.extend_from_slice(&RASTER_VERSION.to_le_bytes());
    bytes.extend_from_slice(&(grid.nx() as u32).to_le_bytes());
    bytes.extend_from_slice(&(grid.ny() as u32).to_le_bytes());
    bytes.extend_from_slice(&(planes.len() as u32).to_le_bytes());
    for plane in planes {
        if plane.len() != grid.sites() {
            return Err(QlaError::ShapeMismatch("raster plane size".into()));
        }
        for v in *plane {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    let crc = crc32fast::hash(&bytes);
    bytes.extend_from_slice(&crc.to_le_bytes());
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn read_raster(path: &std::path::Path, grid: LatticeGrid) -> Result<RefractiveField> {
    let bytes = std::fs::read(path)?;
    let fmt_err = |reason: &str| QlaError::SnapshotFormat {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 20 + 4 {
        return Err(fmt_err("truncated header"));
    }
    if &bytes[0..4] != RASTER_MAGIC {
        return Err(fmt_err("bad magic"));
    }
    let rd_u32 = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let version = rd_u32(4);
    if version != RASTER_VERSION {
        return Err(QlaError::SnapshotVersion { found: version, expected: RASTER_VERSION });
    }
    let (nx, ny, ncomp) = (rd_u32(8) as usize, rd_u32(12) as usize, rd_u32(16) as usize);
    if nx != grid.nx() || ny != grid.ny() {
        return Err(QlaError::ShapeMismatch(format!(
            "raster is {nx}x{ny}, grid is {}x{}",
            grid.nx(),
            grid.ny()
        )));
    }
    if ncomp != 1 && ncomp != 3 {
        return Err(fmt_err("component count must be 1 or 3"));
    }
    let payload = 20 + ncomp * nx * ny * 8;
    if bytes.len() != payload + 4 {
        return Err(fmt_err("truncated payload"));
    }
    let expected = u32::from_le_bytes(bytes[payload..payload + 4].try_into().unwrap());
    let actual = crc32fast::hash(&bytes[..payload]);
    if expected != actual {
        return Err(QlaError::ChecksumMismatch { path: path.to_path_buf(), expected, actual });
    }

    let sites = nx * ny;
    let mut planes = Vec::with_capacity(ncomp);
    for p in 0..ncomp {
        let mut plane = vec![0.0; sites];
        let base = 20 + p * sites * 8;
        for (i, v) in plane.iter_mut().enumerate() {
            let o = base + i * 8;
            *v = f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        }
        planes.push(plane);
    }
    if ncomp == 1 {
        let p = planes[0].clone();
        planes.push(p.clone());
        planes.push(p);
    }
    let pz = planes.pop().unwrap();
    let py = planes.pop().unwrap();
    let px = planes.pop().unwrap();
    RefractiveField::from_planes(grid, [px, py, pz])
}
