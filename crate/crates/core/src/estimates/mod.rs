//! Numerical checks of the dispersive, oscillatory-integral and commutator
//! estimates, plus solver-driven experiments.

pub mod bump;
pub mod cont_dep;
pub mod energy_check;
pub mod kato_ponce;
pub mod kernel;
pub mod poisson;
pub mod quadrature;
pub mod strichartz;
pub mod vdc;

pub use bump::{psi0, psi1, BumpFunction, BumpKind};
pub use cont_dep::{continuous_dependence, ContDepRow, ContDepTable};
pub use energy_check::energy_estimate_check;
pub use kato_ponce::{kato_ponce, kato_ponce_ratio, KatoPonce};
pub use kernel::{oscillatory_kernel_h, KernelValue};
pub use poisson::{gaussian_pair, poisson_residual};
pub use strichartz::{strichartz_experiment, DataKind, DecayFit, StrichartzOptions, StrichartzRow};
pub use vdc::{van_der_corput_check, VdcResult};
