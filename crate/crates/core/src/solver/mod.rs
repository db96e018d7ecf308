//! Nonlinear evolution by integrating-factor RK4 with a dealiased
//! pseudo-spectral quadratic term.

pub mod config;
pub mod functionals;
pub mod nonlinear;
pub mod stepper;
pub mod trajectory;

pub use config::{SolverConfig, BLOW_UP_SENTINEL, BOUNDARY_TOLERANCE};
pub use functionals::{energy, energy_spectral, mass, sup_triple};
pub use nonlinear::{nonlinear_term, NonlinearOperator};
pub use stepper::{step, IfRk4};
pub use trajectory::{evolve, g_functional, Trajectory};
