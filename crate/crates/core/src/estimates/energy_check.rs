//! `sup_t ||u||_{H^s}` against `e^{g(T)} ||phi||_{H^s}`.

use crate::error::{Error, Result};
use crate::solver::{g_functional, Trajectory};
use crate::spectral::{forward_transform, sobolev_norm};

/// Absorbed constant in the energy estimate.
pub const ENERGY_CONSTANT: f64 = 10.0;

/// `sup_t ||u(t)||_{H^s} / (e^{g(T)} phi_norm)`, with `0/0` read as 0.
pub fn energy_estimate_check(traj: &Trajectory, s: f64, phi_norm: f64) -> Result<f64> {
    let mut sup = 0.0_f64;
    for f in &traj.fields {
        sup = sup.max(sobolev_norm(&forward_transform(f)?, s));
    }
    if sup == 0.0 && phi_norm == 0.0 {
        return Ok(0.0);
    }
    if !(phi_norm > 0.0) {
        return Err(Error::ZeroDenominator(format!(
            "initial norm {phi_norm} with sup norm {sup}"
        )));
    }
    let g = g_functional(traj)?;
    Ok(sup / (g.exp() * phi_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::GaussianData;
    use crate::params::DispersionParams;
    use crate::solver::{evolve, SolverConfig};
    use crate::spectral::{Field, Grid};

    #[test]
    fn zero_data_gives_zero() {
        let g = Grid::new(32, 8, 30.0).unwrap();
        let cfg = SolverConfig {
            dt: 0.1,
            t_final: 0.5,
            snapshot_stride: 1,
            ..SolverConfig::default()
        };
        let t = evolve(&Field::zeros(g), &DispersionParams::zk(), &cfg).unwrap();
        assert_eq!(energy_estimate_check(&t, 2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn linear_flow_gives_exp_minus_g() {
        let g = Grid::new(128, 32, 32.0 * std::f64::consts::PI).unwrap();
        let phi = GaussianData {
            center_x: 0.0,
            ..GaussianData::default()
        }
        .sample(g);
        let cfg = SolverConfig {
            dt: 1e-2,
            t_final: 0.5,
            snapshot_stride: 5,
            nonlinear: false,
            boundary_tolerance: None,
            ..SolverConfig::default()
        };
        let t = evolve(&phi, &DispersionParams::zk(), &cfg).unwrap();
        let n0 = sobolev_norm(&forward_transform(&t.fields[0]).unwrap(), 2.0);
        let r = energy_estimate_check(&t, 2.0, n0).unwrap();
        let expected = (-g_functional(&t).unwrap()).exp();
        assert!((r - expected).abs() < 1e-12 * expected, "{r} vs {expected}");
        assert!(r <= 1.0);
    }
}
