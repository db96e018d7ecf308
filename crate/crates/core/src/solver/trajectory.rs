//! Time evolution and the conserved-quantity ledger.

use std::io::Write;

use super::config::{SolverConfig, BLOW_UP_SENTINEL};
use super::functionals::{cumulative_trapezoid, energy_spectral, mass, sup_triple};
use super::stepper::IfRk4;
use crate::error::{Error, Result};
use crate::params::DispersionParams;
use crate::spectral::field::same_grid;
use crate::spectral::{
    forward_transform, inverse_transform_with_residue, Field, Grid, SpectralField,
};

/// Snapshots of one run with per-snapshot diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fields: Vec<Field>,
    pub mass_ledger: Vec<f64>,
    pub energy_ledger: Vec<f64>,
    pub sup_u: Vec<f64>,
    pub sup_ux: Vec<f64>,
    pub sup_uy: Vec<f64>,
    /// `g` integrated from 0 up to each snapshot time.
    pub g_partial: Vec<f64>,
    /// Largest imaginary residue of the inverse transform, relative to the peak.
    pub max_imag_residue: f64,
    /// Step actually used.
    pub dt: f64,
    pub snapshot_stride: usize,
}

impl Trajectory {
    /// Builds the ledgers from given snapshots.
    pub fn from_fields(
        times: Vec<f64>,
        fields: Vec<Field>,
        p: &DispersionParams,
    ) -> Result<Self> {
        if times.len() != fields.len() || times.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "{} times for {} fields",
                times.len(),
                fields.len()
            )));
        }
        let grid = *fields[0].grid();
        let mut t = Self::empty(0.0, 1);
        for (time, f) in times.into_iter().zip(fields) {
            same_grid(f.grid(), &grid)?;
            let s = forward_transform(&f)?;
            t.push(time, f, &s, p)?;
        }
        t.finish()?;
        Ok(t)
    }

    fn empty(dt: f64, stride: usize) -> Self {
        Self {
            times: Vec::new(),
            fields: Vec::new(),
            mass_ledger: Vec::new(),
            energy_ledger: Vec::new(),
            sup_u: Vec::new(),
            sup_ux: Vec::new(),
            sup_uy: Vec::new(),
            g_partial: Vec::new(),
            max_imag_residue: 0.0,
            dt,
            snapshot_stride: stride,
        }
    }

    fn push(&mut self, time: f64, f: Field, s: &SpectralField, p: &DispersionParams) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if !(time > last) {
                return Err(Error::InvalidArgument(format!(
                    "snapshot times must increase ({last} then {time})"
                )));
            }
        }
        let (a, b, c) = sup_triple(s)?;
        self.times.push(time);
        self.mass_ledger.push(mass(&f));
        self.energy_ledger.push(energy_spectral(s, p));
        self.sup_u.push(a);
        self.sup_ux.push(b);
        self.sup_uy.push(c);
        self.fields.push(f);
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        let integrand: Vec<f64> = (0..self.times.len())
            .map(|i| self.sup_u[i] + self.sup_ux[i] + self.sup_uy[i])
            .collect();
        self.g_partial = cumulative_trapezoid(&self.times, &integrand)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_field(&self) -> &Field {
        self.fields.last().expect("trajectory has at least one snapshot")
    }

    /// Largest `|M(t) - M(0)| / M(0)`; zero for zero mass.
    pub fn mass_drift(&self) -> f64 {
        relative_drift(&self.mass_ledger)
    }

    /// Largest `|E(t) - E(0)| / |E(0)|`; zero for zero energy.
    pub fn energy_drift(&self) -> f64 {
        relative_drift(&self.energy_ledger)
    }

    /// Writes the ledger as CSV with columns
    /// `time,mass,energy,sup_u,sup_ux,sup_uy,g_partial`.
    pub fn write_ledger_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "time,mass,energy,sup_u,sup_ux,sup_uy,g_partial")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                self.times[i],
                self.mass_ledger[i],
                self.energy_ledger[i],
                self.sup_u[i],
                self.sup_ux[i],
                self.sup_uy[i],
                self.g_partial[i]
            )?;
        }
        Ok(())
    }
}

fn relative_drift(v: &[f64]) -> f64 {
    let Some(&v0) = v.first() else { return 0.0 };
    let dev = v.iter().fold(0.0_f64, |m, x| m.max((x - v0).abs()));
    if v0 == 0.0 {
        if dev == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        dev / v0.abs()
    }
}

/// `int_0^T (||u||_inf + ||u_x||_inf + ||u_y||_inf) dt` by the trapezoid rule
/// over the snapshot times.
pub fn g_functional(traj: &Trajectory) -> Result<f64> {
    if traj.len() < 2 {
        return Err(Error::InvalidArgument(
            "g(T) needs at least two snapshots".into(),
        ));
    }
    let integrand: Vec<f64> = (0..traj.len())
        .map(|i| traj.sup_u[i] + traj.sup_ux[i] + traj.sup_uy[i])
        .collect();
    Ok(*cumulative_trapezoid(&traj.times, &integrand)?
        .last()
        .expect("non-empty"))
}

/// Integrates from `phi` to `cfg.t_final`.
///
/// The data is first restricted to the dealiased band, where the scheme
/// conserves the discrete mass and energy up to time-stepping error. A
/// snapshot is taken every `snapshot_stride` steps and at the final time.
pub fn evolve(phi: &Field, p: &DispersionParams, cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    phi.check_finite()?;
    check_boundary(phi, 0.0, cfg)?;
    let grid = *phi.grid();
    let (n_steps, dt) = cfg.steps();
    let stepper = IfRk4::new(grid, *p, dt, cfg);
    let mut coeffs = forward_transform(phi)?.into_coeffs();
    stepper.operator().filter(&mut coeffs);

    let mut traj = Trajectory::empty(dt, cfg.snapshot_stride);
    record(&mut traj, grid, &coeffs, 0.0, p, cfg)?;
    for k in 1..=n_steps {
        let time = k as f64 * dt;
        coeffs = stepper.advance(&coeffs, time - dt)?;
        if k % cfg.snapshot_stride == 0 || k == n_steps {
            record(&mut traj, grid, &coeffs, time, p, cfg)?;
        }
    }
    traj.finish()?;
    Ok(traj)
}

fn record(
    traj: &mut Trajectory,
    grid: Grid,
    coeffs: &[rustfft::num_complex::Complex64],
    time: f64,
    p: &DispersionParams,
    cfg: &SolverConfig,
) -> Result<()> {
    let s = SpectralField::new(grid, coeffs.to_vec())?;
    let (u, residue) = inverse_transform_with_residue(&s);
    let peak = u.max_abs();
    if !peak.is_finite() || peak > BLOW_UP_SENTINEL {
        return Err(Error::BlowUp { time, sup: peak });
    }
    check_boundary(&u, time, cfg)?;
    traj.max_imag_residue = traj.max_imag_residue.max(residue);
    traj.push(time, u, &s, p)
}

fn check_boundary(u: &Field, time: f64, cfg: &SolverConfig) -> Result<()> {
    if let Some(tol) = cfg.boundary_tolerance {
        let ratio = u.boundary_ratio();
        if ratio > tol {
            return Err(Error::BoundaryDecay { time, ratio });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::initial::GaussianData;

    #[test]
    fn zero_data_gives_zero_trajectory() {
        let g = Grid::new(32, 8, 30.0).unwrap();
        let cfg = SolverConfig {
            dt: 0.05,
            t_final: 0.5,
            snapshot_stride: 2,
            ..SolverConfig::default()
        };
        let t = evolve(&Field::zeros(g), &DispersionParams::zk(), &cfg).unwrap();
        assert_eq!(t.times[0], 0.0);
        assert_eq!(t.len(), 6);
        assert!(t.fields.iter().all(|f| f.max_abs() == 0.0));
        assert_eq!(g_functional(&t).unwrap(), 0.0);
        assert_eq!(t.mass_drift(), 0.0);
    }

    #[test]
    fn frozen_cos_y_has_g_two() {
        let g = Grid::new(16, 8, 10.0).unwrap();
        let u = Field::from_fn(g, |_, y| y.cos());
        let times: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let fields = vec![u; times.len()];
        let t = Trajectory::from_fields(times, fields, &DispersionParams::zk()).unwrap();
        assert!((g_functional(&t).unwrap() - 2.0).abs() < 1e-6);
        let one = Trajectory::from_fields(vec![0.0], vec![Field::zeros(g)], &DispersionParams::zk())
            .unwrap();
        assert!(g_functional(&one).is_err());
    }

    #[test]
    fn boundary_violation_is_flagged() {
        let g = Grid::new(64, 8, 20.0).unwrap();
        let phi = Field::from_fn(g, |x, _| (-x * x / 64.0).exp());
        let err = evolve(&phi, &DispersionParams::zk(), &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, Error::BoundaryDecay { .. }));
    }

    #[test]
    fn small_run_conserves_and_g_is_monotone() {
        let g = Grid::new(128, 32, 32.0 * PI).unwrap();
        let phi = GaussianData {
            center_x: 0.0,
            ..GaussianData::default()
        }
        .sample(g);
        let cfg = SolverConfig {
            dt: 2e-3,
            t_final: 0.2,
            ..SolverConfig::default()
        };
        let t = evolve(&phi, &DispersionParams::zk(), &cfg).unwrap();
        assert!(t.mass_drift() < 1e-8, "{}", t.mass_drift());
        assert!(t.energy_drift() < 1e-6, "{}", t.energy_drift());
        assert!(t.g_partial.windows(2).all(|w| w[1] >= w[0]));
        assert!(t.max_imag_residue < 1e-12);
        let mut csv = Vec::new();
        t.write_ledger_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("time,mass,energy,sup_u,sup_ux,sup_uy,g_partial\n"));
        assert_eq!(text.lines().count(), t.len() + 1);
    }
}
