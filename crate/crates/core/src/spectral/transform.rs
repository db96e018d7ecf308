//! Two-dimensional DFT pair on the collocation grid.
//!
//! The forward map carries no prefactor; the inverse divides by `Nx*Ny`.
//! Quadrature weights `Lx/Nx` and `2π/Ny` are applied only inside the norm
//! routines, so discrete norms converge to the continuum integrals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::field::{Field, SpectralField};
use crate::error::Result;

// Plans are immutable once built; the cache is shared behind a mutex.
type PlanCache = Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>;
static PLANS: OnceLock<PlanCache> = OnceLock::new();

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    let forward = direction == FftDirection::Forward;
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().expect("fft plan cache poisoned");
    cache
        .entry((len, forward))
        .or_insert_with(|| FftPlanner::new().plan_fft(len, direction))
        .clone()
}

/// In-place 2-D FFT of a row-major `nx x ny` buffer (no normalization).
pub(crate) fn fft2(buf: &mut [Complex64], nx: usize, ny: usize, direction: FftDirection) {
    debug_assert_eq!(buf.len(), nx * ny);
    let fy = plan(ny, direction);
    let fx = plan(nx, direction);
    let scratch_len = fy
        .get_inplace_scratch_len()
        .max(fx.get_inplace_scratch_len());
    let mut scratch = vec![Complex64::new(0.0, 0.0); scratch_len];
    fy.process_with_scratch(buf, &mut scratch);

    let mut cols = vec![Complex64::new(0.0, 0.0); nx * ny];
    for p in 0..nx {
        for q in 0..ny {
            cols[q * nx + p] = buf[p * ny + q];
        }
    }
    fx.process_with_scratch(&mut cols, &mut scratch);
    for q in 0..ny {
        for p in 0..nx {
            buf[p * ny + q] = cols[q * nx + p];
        }
    }
}

/// Forward transform. Rejects non-finite samples, naming the first one.
pub fn forward_transform(f: &Field) -> Result<SpectralField> {
    f.check_finite()?;
    let g = *f.grid();
    let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2(&mut buf, g.nx(), g.ny(), FftDirection::Forward);
    SpectralField::new(g, buf)
}

/// Complex samples of the trigonometric interpolant of `f`.
pub fn inverse_transform_complex(f: &SpectralField) -> Vec<Complex64> {
    let g = *f.grid();
    let mut buf = f.coeffs().to_vec();
    fft2(&mut buf, g.nx(), g.ny(), FftDirection::Inverse);
    let inv = 1.0 / g.len() as f64;
    for c in &mut buf {
        *c *= inv;
    }
    buf
}

/// Inverse transform keeping the real part.
pub fn inverse_transform(f: &SpectralField) -> Field {
    inverse_transform_with_residue(f).0
}

/// Inverse transform plus the largest `|Im u|` relative to the largest `|Re u|`
/// (zero when the field vanishes).
pub fn inverse_transform_with_residue(f: &SpectralField) -> (Field, f64) {
    let buf = inverse_transform_complex(f);
    let mut peak = 0.0_f64;
    let mut imag = 0.0_f64;
    let values: Vec<f64> = buf
        .iter()
        .map(|c| {
            peak = peak.max(c.re.abs());
            imag = imag.max(c.im.abs());
            c.re
        })
        .collect();
    let residue = if peak > 0.0 { imag / peak } else { imag };
    let field = Field::new(*f.grid(), values).expect("length preserved");
    (field, residue)
}
