//! Binary field snapshots (`.dzkf`).
//!
//! Layout, all little-endian:
//!
//! | offset | size | content              |
//! |--------|------|----------------------|
//! | 0      | 4    | magic `b"DZKF"`      |
//! | 4      | 2    | version (`u16`, = 1) |
//! | 6      | 2    | reserved, zero       |
//! | 8      | 4    | `Nx` (`u32`)         |
//! | 12     | 4    | `Ny` (`u32`)         |
//! | 16     | 8    | `Lx` (`f64`)         |
//! | 24     | 8    | reserved, zero       |
//! | 32     | 8·Nx·Ny | samples (`f64`), row-major, x slow |

use std::io::{Read, Write};
use std::path::Path;

use super::field::Field;
use super::grid::Grid;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"DZKF";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 32;

pub fn encode_snapshot(f: &Field) -> Vec<u8> {
    let g = f.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * g.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&[0u8; 2]);
    out.extend_from_slice(&(g.nx() as u32).to_le_bytes());
    out.extend_from_slice(&(g.ny() as u32).to_le_bytes());
    out.extend_from_slice(&g.lx().to_le_bytes());
    out.extend_from_slice(&[0u8; 8]);
    for v in f.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<Field> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!(
            "header truncated: {} bytes",
            bytes.len()
        )));
    }
    if bytes[0..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let nx = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let ny = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as usize;
    let lx = f64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let grid = Grid::new(nx, ny, lx).map_err(|e| Error::Format(e.to_string()))?;
    let expected = HEADER_LEN + 8 * grid.len();
    if bytes.len() != expected {
        return Err(Error::Format(format!(
            "expected {expected} bytes, got {}",
            bytes.len()
        )));
    }
    let values = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Field::new(grid, values)
}

pub fn write_snapshot(mut w: impl Write, f: &Field) -> Result<()> {
    w.write_all(&encode_snapshot(f))?;
    Ok(())
}

pub fn read_snapshot(mut r: impl Read) -> Result<Field> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode_snapshot(&buf)
}

pub fn save_snapshot(path: impl AsRef<Path>, f: &Field) -> Result<()> {
    std::fs::write(path, encode_snapshot(f))?;
    Ok(())
}

pub fn load_snapshot(path: impl AsRef<Path>) -> Result<Field> {
    decode_snapshot(&std::fs::read(path)?)
}
