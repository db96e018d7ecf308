use rustfft::num_complex::Complex64;

use super::grid::Grid;
use crate::error::{Error, Result};

/// Real samples of `u(x, y)` at the collocation points of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Samples `f(x_p, y_q)`, visiting points in storage order.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for p in 0..grid.nx() {
            let x = grid.x(p);
            for q in 0..grid.ny() {
                values.push(f(x, grid.y(q)));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, p: usize, q: usize) -> f64 {
        self.values[p * self.grid.ny() + q]
    }

    /// First non-finite sample, as `(p, q, value)`.
    pub fn find_non_finite(&self) -> Option<(usize, usize, f64)> {
        let ny = self.grid.ny();
        self.values
            .iter()
            .position(|v| !v.is_finite())
            .map(|i| (i / ny, i % ny, self.values[i]))
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.find_non_finite() {
            Some((p, q, value)) => Err(Error::NonFinite { p, q, value }),
            None => Ok(()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest `|u|` over the outer 10% of the x-box divided by the peak `|u|`.
    /// Zero for the zero field.
    pub fn boundary_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let half = 0.5 * self.grid.lx();
        let edge = 0.8 * half;
        let ny = self.grid.ny();
        let mut outer = 0.0_f64;
        for p in 0..self.grid.nx() {
            if self.grid.x(p).abs() >= edge {
                for v in &self.values[p * ny..(p + 1) * ny] {
                    outer = outer.max(v.abs());
                }
            }
        }
        outer / peak
    }

    pub fn axpy(&self, a: f64, other: &Field) -> Result<Field> {
        same_grid(&self.grid, &other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| u + a * v)
            .collect();
        Ok(Field {
            grid: self.grid,
            values,
        })
    }
}

/// Fourier coefficients `u^(xi_m, n)` in FFT order (unnormalized forward DFT).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn at(&self, i: usize, q: usize) -> Complex64 {
        self.coeffs[i * self.grid.ny() + q]
    }

    /// Coefficient at signed modes `(m, n)`, if representable.
    pub fn at_mode(&self, m: i64, n: i64) -> Option<Complex64> {
        let i = self.grid.index_x(m)?;
        let q = self.grid.index_y(n)?;
        Some(self.at(i, q))
    }

    pub fn set_mode(&mut self, m: i64, n: i64, c: Complex64) -> Result<()> {
        let (i, q) = match (self.grid.index_x(m), self.grid.index_y(n)) {
            (Some(i), Some(q)) => (i, q),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "mode ({m}, {n}) not representable on the grid"
                )))
            }
        };
        let ny = self.grid.ny();
        self.coeffs[i * ny + q] = c;
        Ok(())
    }

    /// Largest `|c(-xi,-n) - conj c(xi,n)|` over pairs with a partner on the
    /// grid, relative to the largest coefficient. Nyquist lines are skipped.
    pub fn hermitian_defect(&self) -> f64 {
        let g = &self.grid;
        let peak = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        if peak == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for i in 0..g.nx() {
            if g.is_nyquist_x(i) {
                continue;
            }
            let ci = (g.nx() - i) % g.nx();
            for q in 0..g.ny() {
                if g.is_nyquist_y(q) {
                    continue;
                }
                let cq = (g.ny() - q) % g.ny();
                let d = (self.at(ci, cq) - self.at(i, q).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst / peak
    }

    pub fn scaled(&self, a: f64) -> SpectralField {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        same_grid(&self.grid, &other.grid)?;
        Ok(SpectralField {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        same_grid(&self.grid, &other.grid)?;
        Ok(SpectralField {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Zeroes the Nyquist lines `m = -Nx/2` and `n = -Ny/2`.
    pub fn zero_nyquist(&mut self) {
        let g = self.grid;
        let ny = g.ny();
        let ix = g.nx() / 2;
        for q in 0..ny {
            self.coeffs[ix * ny + q] = Complex64::new(0.0, 0.0);
        }
        for i in 0..g.nx() {
            self.coeffs[i * ny + ny / 2] = Complex64::new(0.0, 0.0);
        }
    }

    /// Re-samples onto `target`, which must share `Lx` and have at least as
    /// many points per axis. Nyquist coefficients are split evenly between
    /// `±N/2`, so the trigonometric interpolant is preserved exactly.
    pub fn padded_to(&self, target: Grid) -> Result<SpectralField> {
        let g = self.grid;
        if target.lx() != g.lx() || target.nx() < g.nx() || target.ny() < g.ny() {
            return Err(Error::GridMismatch(format!(
                "cannot pad {}x{} (Lx={}) onto {}x{} (Lx={})",
                g.nx(),
                g.ny(),
                g.lx(),
                target.nx(),
                target.ny(),
                target.lx()
            )));
        }
        if target == g {
            return Ok(self.clone());
        }
        let scale = (target.len() / g.len()) as f64;
        let mut out = SpectralField::zeros(target);
        let tny = target.ny();
        for i in 0..g.nx() {
            let m = g.mode_x(i);
            let (ms, wx): (&[i64], f64) = if g.is_nyquist_x(i) && target.nx() > g.nx() {
                (&[m, -m][..], 0.5)
            } else {
                (&[m][..], 1.0)
            };
            for q in 0..g.ny() {
                let c = self.at(i, q);
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let n = g.mode_y(q);
                let (ns, wy): (&[i64], f64) = if g.is_nyquist_y(q) && target.ny() > g.ny() {
                    (&[n, -n][..], 0.5)
                } else {
                    (&[n][..], 1.0)
                };
                let v = c * (scale * wx * wy);
                for &mm in ms {
                    let ti = target.index_x(mm).expect("mode fits on larger grid");
                    for &nn in ns {
                        let tq = target.index_y(nn).expect("mode fits on larger grid");
                        out.coeffs[ti * tny + tq] += v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Keeps the modes representable on the coarser `target` grid (same `Lx`),
    /// dropping the rest; the inverse of [`Self::padded_to`] for fields without
    /// content outside the coarse band.
    pub fn truncated_to(&self, target: Grid) -> Result<SpectralField> {
        let g = self.grid;
        if target.lx() != g.lx() || target.nx() > g.nx() || target.ny() > g.ny() {
            return Err(Error::GridMismatch(format!(
                "cannot truncate {}x{} onto {}x{}",
                g.nx(),
                g.ny(),
                target.nx(),
                target.ny()
            )));
        }
        let scale = target.len() as f64 / g.len() as f64;
        let mut out = SpectralField::zeros(target);
        let tny = target.ny();
        for ti in 0..target.nx() {
            let i = g.index_x(target.mode_x(ti)).expect("coarse mode on fine grid");
            for tq in 0..tny {
                let q = g.index_y(target.mode_y(tq)).expect("coarse mode on fine grid");
                out.coeffs[ti * tny + tq] = self.at(i, q) * scale;
            }
        }
        Ok(out)
    }
}

pub(crate) fn same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!(
            "{}x{} (Lx={}) vs {}x{} (Lx={})",
            a.nx(),
            a.ny(),
            a.lx(),
            b.nx(),
            b.ny(),
            b.lx()
        )));
    }
    Ok(())
}
