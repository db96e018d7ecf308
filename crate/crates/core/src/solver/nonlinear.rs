//! The flux-form quadratic term `-1/2 d_x (u^2)` with the 2/3 rule.

use rustfft::num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::Result;
use crate::spectral::transform::fft2;
use crate::spectral::{forward_transform, inverse_transform, Field, Grid, SpectralField};

/// Precomputed mask and derivative factors for one grid.
#[derive(Debug, Clone)]
pub struct NonlinearOperator {
    grid: Grid,
    mask: Vec<bool>,
    // -i xi / 2 on retained modes, 0 elsewhere.
    factor: Vec<Complex64>,
    xi_max_kept: f64,
}

impl NonlinearOperator {
    pub fn new(grid: Grid, dealias: f64) -> Self {
        let mx = dealias * grid.nx() as f64 / 2.0;
        let my = dealias * grid.ny() as f64 / 2.0;
        let ny = grid.ny();
        let mut mask = Vec::with_capacity(grid.len());
        let mut factor = Vec::with_capacity(grid.len());
        let mut xi_max_kept = 0.0_f64;
        for i in 0..grid.nx() {
            let kx = !grid.is_nyquist_x(i) && (grid.mode_x(i).abs() as f64) < mx;
            let xi = grid.xi(i);
            for q in 0..ny {
                let keep = kx && !grid.is_nyquist_y(q) && (grid.mode_y(q).abs() as f64) < my;
                mask.push(keep);
                if keep {
                    xi_max_kept = xi_max_kept.max(xi.abs());
                    factor.push(Complex64::new(0.0, -0.5 * xi));
                } else {
                    factor.push(Complex64::new(0.0, 0.0));
                }
            }
        }
        Self {
            grid,
            mask,
            factor,
            xi_max_kept,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Largest `|xi|` the filter keeps (enters the CFL bound).
    pub fn xi_max(&self) -> f64 {
        self.xi_max_kept
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Zeroes every mode outside the retained band.
    pub fn filter(&self, coeffs: &mut [Complex64]) {
        for (c, &k) in coeffs.iter_mut().zip(&self.mask) {
            if !k {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Returns the coefficients of `-1/2 P d_x (P u)^2` and `max |P u|` on the grid.
    pub fn apply(&self, u: &[Complex64]) -> (Vec<Complex64>, f64) {
        let g = &self.grid;
        let mut buf: Vec<Complex64> = u
            .iter()
            .zip(&self.mask)
            .map(|(c, &k)| if k { *c } else { Complex64::new(0.0, 0.0) })
            .collect();
        fft2(&mut buf, g.nx(), g.ny(), FftDirection::Inverse);
        let inv = 1.0 / g.len() as f64;
        let mut max_u = 0.0_f64;
        for c in buf.iter_mut() {
            let v = c.re * inv;
            max_u = max_u.max(v.abs());
            *c = Complex64::new(v * v, 0.0);
        }
        fft2(&mut buf, g.nx(), g.ny(), FftDirection::Forward);
        for (c, f) in buf.iter_mut().zip(&self.factor) {
            *c *= f;
        }
        (buf, max_u)
    }
}

/// `-1/2 d_x (u^2)` with both factors and the product truncated by the 2/3 rule.
pub fn nonlinear_term(u: &Field) -> Result<Field> {
    nonlinear_term_with(u, crate::spectral::TWO_THIRDS)
}

pub fn nonlinear_term_with(u: &Field, dealias: f64) -> Result<Field> {
    let op = NonlinearOperator::new(*u.grid(), dealias);
    let s = forward_transform(u)?;
    let (n, _) = op.apply(s.coeffs());
    Ok(inverse_transform(&SpectralField::new(*u.grid(), n)?))
}
