//! Binary field snapshots.
//!
//! Layout (little endian):
//! magic `"QLAF"`, u32 format version, u32 nx, u32 ny, u32 component count
//! (6), f64 delta, u64 step index, then `ny·nx·6` f64 amplitudes in memory
//! order (row-major, component fastest), then CRC32 of all preceding bytes.
//! Round trips are bit-exact.

use crate::error::{QlaError, Result};
use crate::field::{QubitField, COMPONENTS};
use crate::grid::LatticeGrid;
use std::path::Path;

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"QLAF";
pub const SNAPSHOT_VERSION: u32 = 1;

const HEADER_LEN: usize = 4 + 4 + 4 + 4 + 4 + 8 + 8;

/// Writes a snapshot and returns its trailing CRC32.
pub fn write_snapshot(field: &QubitField, step: u64, path: &Path) -> Result<u32> {
    let grid = field.grid();
    let amps = field.amplitudes();
    let mut bytes = Vec::with_capacity(HEADER_LEN + amps.len() * 8 + 4);
    bytes.extend_from_slice(SNAPSHOT_MAGIC);
    bytes.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    bytes.extend_from_slice(&(grid.nx() as u32).to_le_bytes());
    bytes.extend_from_slice(&(grid.ny() as u32).to_le_bytes());
    bytes.extend_from_slice(&(COMPONENTS as u32).to_le_bytes());
    bytes.extend_from_slice(&grid.delta().to_le_bytes());
    bytes.extend_from_slice(&step.to_le_bytes());
    for a in amps {
        bytes.extend_from_slice(&a.to_le_bytes());
    }
    let crc = crc32fast::hash(&bytes);
    bytes.extend_from_slice(&crc.to_le_bytes());
    std::fs::write(path, bytes)?;
    Ok(crc)
}

/// Reads a snapshot back, verifying magic, version, shape and checksum.
pub fn read_snapshot(path: &Path) -> Result<(QubitField, u64)> {
    let bytes = std::fs::read(path)?;
    let fmt_err = |reason: &str| QlaError::SnapshotFormat {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < HEADER_LEN + 4 {
        return Err(fmt_err("truncated header"));
    }
    if &bytes[0..4] != SNAPSHOT_MAGIC {
        return Err(fmt_err("bad magic"));
    }
    let rd_u32 = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let version = rd_u32(4);
    if version != SNAPSHOT_VERSION {
        return Err(QlaError::SnapshotVersion { found: version, expected: SNAPSHOT_VERSION });
    }
    let nx = rd_u32(8) as usize;
    let ny = rd_u32(12) as usize;
    let ncomp = rd_u32(16) as usize;
    if ncomp != COMPONENTS {
        return Err(fmt_err(&format!("expected {COMPONENTS} components, found {ncomp}")));
    }
    let delta = f64::from_le_bytes(bytes[20..28].try_into().unwrap());
    let step = u64::from_le_bytes(bytes[28..36].try_into().unwrap());
    let payload_len = nx * ny * COMPONENTS * 8;
    if bytes.len() != HEADER_LEN + payload_len + 4 {
        return Err(fmt_err("truncated payload"));
    }
    let crc_offset = HEADER_LEN + payload_len;
    let expected = u32::from_le_bytes(bytes[crc_offset..crc_offset + 4].try_into().unwrap());
    let actual = crc32fast::hash(&bytes[..crc_offset]);
    if expected != actual {
        return Err(QlaError::ChecksumMismatch { path: path.to_path_buf(), expected, actual });
    }
    let grid = LatticeGrid::new(nx, ny, delta)?;
    let mut amps = vec![0.0; nx * ny * COMPONENTS];
    for (i, a) in amps.iter_mut().enumerate() {
        let o = HEADER_LEN + i * 8;
        *a = f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    }
    Ok((QubitField::from_amplitudes(grid, amps)?, step))
}

/// Reads only the trailing CRC32 of a snapshot file and recomputes it.
pub fn verify_snapshot_crc(path: &Path) -> Result<u32> {
    let bytes = std::fs::read(path)?;
    if bytes.len() < 4 {
        return Err(QlaError::SnapshotFormat {
            path: path.to_path_buf(),
            reason: "file too short".into(),
        });
    }
    let body = &bytes[..bytes.len() - 4];
    let expected = u32::from_le_bytes(bytes[bytes.len() - 4..].try_into().unwrap());
    let actual = crc32fast::hash(body);
    if expected != actual {
        return Err(QlaError::ChecksumMismatch { path: path.to_path_buf(), expected, actual });
    }
    Ok(actual)
}
