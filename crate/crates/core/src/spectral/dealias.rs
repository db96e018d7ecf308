//! Truncation filters and dealiased products.

use rustfft::num_complex::Complex64;

use super::field::{same_grid, Field, SpectralField};
use super::transform::{forward_transform, inverse_transform};
use crate::error::Result;

/// Default retained fraction of the spectrum for quadratic products.
pub const TWO_THIRDS: f64 = 2.0 / 3.0;

/// Keeps signed modes with `|m| < fraction * Nx / 2` and `|n| < fraction * Ny / 2`.
/// With `fraction = 2/3` this is the usual 2/3 rule; Nyquist lines are always dropped.
pub fn truncate(f: &SpectralField, fraction: f64) -> SpectralField {
    let g = *f.grid();
    let mx = fraction * g.nx() as f64 / 2.0;
    let my = fraction * g.ny() as f64 / 2.0;
    let ny = g.ny();
    let keep_y: Vec<bool> = (0..ny)
        .map(|q| !g.is_nyquist_y(q) && (g.mode_y(q).abs() as f64) < my)
        .collect();
    let mut out = f.clone();
    let coeffs = out.coeffs_mut();
    for i in 0..g.nx() {
        let keep_x = !g.is_nyquist_x(i) && (g.mode_x(i).abs() as f64) < mx;
        for q in 0..ny {
            if !(keep_x && keep_y[q]) {
                coeffs[i * ny + q] = Complex64::new(0.0, 0.0);
            }
        }
    }
    out
}

/// `P(Pf * Pg)` with `P` the truncation filter, product formed on the grid.
pub fn dealiased_product_spectral(
    f: &SpectralField,
    g: &SpectralField,
    fraction: f64,
) -> Result<SpectralField> {
    same_grid(f.grid(), g.grid())?;
    let uf = inverse_transform(&truncate(f, fraction));
    let ug = inverse_transform(&truncate(g, fraction));
    let prod: Vec<f64> = uf.values().iter().zip(ug.values()).map(|(a, b)| a * b).collect();
    let prod = Field::new(*f.grid(), prod)?;
    Ok(truncate(&forward_transform(&prod)?, fraction))
}

/// Physical-space version of [`dealiased_product_spectral`].
pub fn dealiased_product(f: &Field, g: &Field, fraction: f64) -> Result<Field> {
    let p = dealiased_product_spectral(&forward_transform(f)?, &forward_transform(g)?, fraction)?;
    Ok(inverse_transform(&p))
}
