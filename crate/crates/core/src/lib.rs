//! Pseudo-spectral simulation and numerical estimates for the
//! dispersion-generalized Zakharov–Kuznetsov equation
//!
//! ```text
//! u_t - d_x (D_x^{1+alpha} ± D_y^{1+beta}) u + u u_x = 0,   (x, y) in R x T
//! ```
//!
//! `R` is truncated to a periodic box of length `Lx`; `T` has period `2π`.

// Guards such as `!(x > 0.0)` are written negated so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimates;
pub mod initial;
pub mod params;
pub mod propagator;
pub mod rng;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use rustfft::num_complex::Complex64;
pub use params::{DispersionParams, Sign};
pub use propagator::{
    critical_regularity, dispersion_symbol, linear_evolve, strichartz_rate, Propagator,
};
pub use spectral::{Field, Grid, MultiplierSpec, SpectralField};
