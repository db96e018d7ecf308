use crate::error::{Error, Result};
use crate::spectral::TWO_THIRDS;

/// Time-stepping controls for [`crate::solver::evolve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Requested step; shrunk so that an integer number of steps reaches `t_final`.
    pub dt: f64,
    pub t_final: f64,
    /// Retained spectral fraction for the quadratic term.
    pub dealias: f64,
    pub cfl_safety: f64,
    pub snapshot_stride: usize,
    /// `false` runs the linear flow through the same stepper.
    pub nonlinear: bool,
    /// Maximum allowed outer-box/peak amplitude ratio; `None` disables the check.
    pub boundary_tolerance: Option<f64>,
}

/// Sup-norm level at which a run is declared blown up.
pub const BLOW_UP_SENTINEL: f64 = 1e6;

/// Default outer-box amplitude tolerance, relative to the peak.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_final: 1.0,
            dealias: TWO_THIRDS,
            cfl_safety: 0.5,
            snapshot_stride: 10,
            nonlinear: true,
            boundary_tolerance: Some(BOUNDARY_TOLERANCE),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return bad(format!("t_final = {} must be positive", self.t_final));
        }
        if !(self.dealias > 0.0 && self.dealias <= 1.0) {
            return bad(format!("dealias = {} must lie in (0, 1]", self.dealias));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return bad(format!("cfl_safety = {} must lie in (0, 1]", self.cfl_safety));
        }
        if self.snapshot_stride == 0 {
            return bad("snapshot_stride must be positive".into());
        }
        if let Some(tol) = self.boundary_tolerance {
            if !(tol > 0.0) {
                return bad(format!("boundary tolerance {tol} must be positive"));
            }
        }
        Ok(())
    }

    /// Number of steps and the effective step.
    pub fn steps(&self) -> (usize, f64) {
        let n = (self.t_final / self.dt - 1e-9).ceil().max(1.0) as usize;
        (n, self.t_final / n as f64)
    }
}
