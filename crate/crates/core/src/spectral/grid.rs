use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Collocation grid on a truncated cylinder `[-Lx/2, Lx/2) x [0, 2π)`.
///
/// Samples are stored row-major with `x` as the slow index:
/// sample `(p, q)` lives at `p * ny + q`. Spectral arrays use the same
/// layout in FFT order, so index `i` along an axis of length `N`
/// represents the signed mode `i` for `i < N/2` and `i - N` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    nx: usize,
    ny: usize,
    lx: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64) -> Result<Self> {
        for (name, n) in [("Nx", nx), ("Ny", ny)] {
            if n < 4 || !n.is_power_of_two() {
                return Err(Error::InvalidGrid(format!(
                    "{name} = {n} must be a power of two >= 4"
                )));
            }
        }
        if !(lx.is_finite() && lx > 0.0) {
            return Err(Error::InvalidGrid(format!("Lx = {lx} must be positive")));
        }
        Ok(Self { nx, ny, lx })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn lx(&self) -> f64 {
        self.lx
    }

    pub fn ly(&self) -> f64 {
        2.0 * PI
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        2.0 * PI / self.ny as f64
    }

    /// Quadrature weight of one collocation cell.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn x(&self, p: usize) -> f64 {
        -0.5 * self.lx + p as f64 * self.dx()
    }

    pub fn y(&self, q: usize) -> f64 {
        2.0 * PI * q as f64 / self.ny as f64
    }

    /// Signed x mode number for FFT index `i`.
    pub fn mode_x(&self, i: usize) -> i64 {
        signed_mode(i, self.nx)
    }

    /// Signed y wavenumber `n` for FFT index `q`.
    pub fn mode_y(&self, q: usize) -> i64 {
        signed_mode(q, self.ny)
    }

    /// Physical x frequency `2π m / Lx` for FFT index `i`.
    pub fn xi(&self, i: usize) -> f64 {
        self.xi_of_mode(self.mode_x(i))
    }

    pub fn xi_of_mode(&self, m: i64) -> f64 {
        (2.0 * PI / self.lx) * m as f64
    }

    /// Largest representable `|xi|` (the Nyquist frequency).
    pub fn xi_max(&self) -> f64 {
        PI * self.nx as f64 / self.lx
    }

    pub fn is_nyquist_x(&self, i: usize) -> bool {
        i == self.nx / 2
    }

    pub fn is_nyquist_y(&self, q: usize) -> bool {
        q == self.ny / 2
    }

    /// FFT index of signed x mode `m`, if representable.
    pub fn index_x(&self, m: i64) -> Option<usize> {
        index_of(m, self.nx)
    }

    pub fn index_y(&self, n: i64) -> Option<usize> {
        index_of(n, self.ny)
    }

    /// Same box, `factor` times more points along both axes.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.nx * factor, self.ny * factor, self.lx)
    }

    pub fn with_nx(&self, nx: usize) -> Result<Self> {
        Self::new(nx, self.ny, self.lx)
    }
}

fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

fn index_of(m: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if m < -half || m >= half {
        None
    } else if m >= 0 {
        Some(m as usize)
    } else {
        Some((m + n as i64) as usize)
    }
}
