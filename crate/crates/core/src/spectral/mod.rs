//! Grids, transforms, multipliers, Littlewood–Paley projectors and norms on
//! the truncated cylinder.

pub mod dealias;
pub mod field;
pub mod grid;
pub mod multiplier;
pub mod norms;
pub mod projector;
pub mod snapshot;
pub mod transform;

pub use dealias::{dealiased_product, dealiased_product_spectral, truncate, TWO_THIRDS};
pub use field::{Field, SpectralField};
pub use grid::Grid;
pub use multiplier::{apply_multiplier, MultiplierSpec};
pub use norms::{
    anisotropic_norm_x, anisotropic_norm_y, field_l2_norm, l2_norm, mixed_norm, sobolev_norm,
    sup_norm, sup_norm_spectral, TimeExponent, DEFAULT_OVERSAMPLE,
};
pub use projector::{dyadic_index, lp_blocks, lp_project};
pub use transform::{
    forward_transform, inverse_transform, inverse_transform_complex,
    inverse_transform_with_residue,
};
