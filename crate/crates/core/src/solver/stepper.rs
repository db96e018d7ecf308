//! Integrating-factor RK4.
//!
//! With `L = i F` diagonal, `E = e^{L h}` and `E2 = e^{L h/2}`:
//!
//! ```text
//! k1 = N(u)
//! k2 = N(E2 (u + h/2 k1))
//! k3 = N(E2 u + h/2 k2)
//! k4 = N(E u + h E2 k3)
//! u' = E u + h/6 (E k1 + 2 E2 (k2 + k3) + k4)
//! ```

use rustfft::num_complex::Complex64;

use super::config::SolverConfig;
use super::nonlinear::NonlinearOperator;
use crate::error::{Error, Result};
use crate::params::DispersionParams;
use crate::propagator::Propagator;
use crate::spectral::field::same_grid;
use crate::spectral::{Grid, SpectralField};

#[derive(Debug, Clone)]
pub struct IfRk4 {
    grid: Grid,
    dt: f64,
    cfl_safety: f64,
    nonlinear: bool,
    op: NonlinearOperator,
    e_half: Vec<Complex64>,
    e_full: Vec<Complex64>,
}

impl IfRk4 {
    pub fn new(grid: Grid, params: DispersionParams, dt: f64, cfg: &SolverConfig) -> Self {
        let prop = Propagator::new(grid, params);
        Self {
            grid,
            dt,
            cfl_safety: cfg.cfl_safety,
            nonlinear: cfg.nonlinear,
            op: NonlinearOperator::new(grid, cfg.dealias),
            e_half: prop.phases(0.5 * dt),
            e_full: prop.phases(dt),
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn operator(&self) -> &NonlinearOperator {
        &self.op
    }

    /// Largest step allowed by the nonlinear CFL bound for amplitude `max_u`.
    pub fn cfl_limit(&self, max_u: f64) -> f64 {
        let denom = max_u * self.op.xi_max();
        if denom == 0.0 {
            f64::INFINITY
        } else {
            self.cfl_safety / denom
        }
    }

    /// Advances the coefficients by one step. `time` is only used in diagnostics.
    pub fn advance(&self, u: &[Complex64], time: f64) -> Result<Vec<Complex64>> {
        let h = self.dt;
        let (e, e2) = (&self.e_full, &self.e_half);
        if !self.nonlinear {
            return Ok(u.iter().zip(e).map(|(a, b)| a * b).collect());
        }
        let (k1, max_u) = self.op.apply(u);
        if !max_u.is_finite() {
            return Err(Error::BlowUp {
                time,
                sup: max_u,
            });
        }
        let limit = self.cfl_limit(max_u);
        if h > limit {
            return Err(Error::Cfl {
                time,
                max_u,
                dt: h,
                limit,
            });
        }
        let n = u.len();
        let mut stage = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            stage[i] = e2[i] * (u[i] + 0.5 * h * k1[i]);
        }
        let (k2, _) = self.op.apply(&stage);
        for i in 0..n {
            stage[i] = e2[i] * u[i] + 0.5 * h * k2[i];
        }
        let (k3, _) = self.op.apply(&stage);
        for i in 0..n {
            stage[i] = e[i] * u[i] + h * e2[i] * k3[i];
        }
        let (k4, _) = self.op.apply(&stage);
        let h6 = h / 6.0;
        let out = (0..n)
            .map(|i| {
                e[i] * u[i] + h6 * (e[i] * k1[i] + 2.0 * e2[i] * (k2[i] + k3[i]) + k4[i])
            })
            .collect();
        Ok(out)
    }

    pub fn step_field(&self, u: &SpectralField, time: f64) -> Result<SpectralField> {
        same_grid(u.grid(), &self.grid)?;
        SpectralField::new(self.grid, self.advance(u.coeffs(), time)?)
    }
}

/// One integrating-factor RK4 step of size `dt`.
pub fn step(
    u: &SpectralField,
    dt: f64,
    p: &DispersionParams,
    cfg: &SolverConfig,
) -> Result<SpectralField> {
    IfRk4::new(*u.grid(), *p, dt, cfg).step_field(u, 0.0)
}
