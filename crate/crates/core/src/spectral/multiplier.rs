//! Fourier multipliers `m(xi, n)` acting diagonally on coefficients.

use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{Error, Result};

type Symbol = dyn Fn(f64, i64) -> Complex64 + Send + Sync;

/// A symbol together with a label used in diagnostics.
#[derive(Clone)]
pub struct MultiplierSpec {
    symbol: Arc<Symbol>,
    description: String,
}

impl fmt::Debug for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSpec")
            .field("description", &self.description)
            .finish()
    }
}

/// `|r|^a`, extended by 0 at the origin.
fn homogeneous(r: f64, a: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else {
        r.abs().powf(a)
    }
}

impl MultiplierSpec {
    pub fn from_fn(
        description: impl Into<String>,
        symbol: impl Fn(f64, i64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            symbol: Arc::new(symbol),
            description: description.into(),
        }
    }

    pub fn real(
        description: impl Into<String>,
        symbol: impl Fn(f64, i64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::from_fn(description, move |xi, n| Complex64::new(symbol(xi, n), 0.0))
    }

    pub fn identity() -> Self {
        Self::real("I", |_, _| 1.0)
    }

    /// `D_x^a`: symbol `|xi|^a`, zero at `xi = 0`.
    pub fn d_x(a: f64) -> Self {
        Self::real(format!("D_x^{a}"), move |xi, _| homogeneous(xi, a))
    }

    /// `D_y^b`: symbol `|n|^b`, zero at `n = 0`.
    pub fn d_y(b: f64) -> Self {
        Self::real(format!("D_y^{b}"), move |_, n| homogeneous(n as f64, b))
    }

    /// `J_x^s`: symbol `(1 + xi^2)^{s/2}`.
    pub fn j_x(s: f64) -> Self {
        Self::real(format!("J_x^{s}"), move |xi, _| (1.0 + xi * xi).powf(0.5 * s))
    }

    /// `J_y^s`: symbol `(1 + n^2)^{s/2}`.
    pub fn j_y(s: f64) -> Self {
        Self::real(format!("J_y^{s}"), move |_, n| {
            (1.0 + (n * n) as f64).powf(0.5 * s)
        })
    }

    /// `J^s`: symbol `(1 + xi^2 + n^2)^{s/2}`.
    pub fn j(s: f64) -> Self {
        Self::real(format!("J^{s}"), move |xi, n| {
            (1.0 + xi * xi + (n * n) as f64).powf(0.5 * s)
        })
    }

    /// `d_x`: symbol `i xi`.
    pub fn partial_x() -> Self {
        Self::from_fn("d_x", |xi, _| Complex64::new(0.0, xi))
    }

    /// `d_y`: symbol `i n`.
    pub fn partial_y() -> Self {
        Self::from_fn("d_y", |_, n| Complex64::new(0.0, n as f64))
    }

    /// Pointwise product of two symbols.
    pub fn product(&self, other: &MultiplierSpec) -> Self {
        let (a, b) = (self.symbol.clone(), other.symbol.clone());
        Self {
            symbol: Arc::new(move |xi, n| a(xi, n) * b(xi, n)),
            description: format!("{} * {}", self.description, other.description),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, xi: f64, n: i64) -> Complex64 {
        (self.symbol)(xi, n)
    }
}

/// Multiplies each coefficient by the symbol at its frequency.
///
/// The Nyquist lines `m = -Nx/2` and `n = -Ny/2` have no conjugate partner
/// and are zeroed. A symbol that is not finite at any grid frequency is
/// rejected.
pub fn apply_multiplier(f: &SpectralField, m: &MultiplierSpec) -> Result<SpectralField> {
    let g = *f.grid();
    let ny = g.ny();
    let mut out = f.clone();
    let coeffs = out.coeffs_mut();
    for i in 0..g.nx() {
        let xi = g.xi(i);
        let nyq_x = g.is_nyquist_x(i);
        for q in 0..ny {
            let n = g.mode_y(q);
            let s = m.eval(xi, n);
            if !(s.re.is_finite() && s.im.is_finite()) {
                return Err(Error::NonFiniteSymbol {
                    description: m.description.clone(),
                    xi,
                    n,
                });
            }
            let c = &mut coeffs[i * ny + q];
            if nyq_x || g.is_nyquist_y(q) {
                *c = Complex64::new(0.0, 0.0);
            } else {
                *c *= s;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::field::Field;
    use crate::spectral::grid::Grid;
    use crate::spectral::transform::{forward_transform, inverse_transform};

    #[test]
    fn symbols_finite_at_origin() {
        for m in [
            MultiplierSpec::d_x(-0.5),
            MultiplierSpec::d_x(0.5),
            MultiplierSpec::d_y(2.0),
            MultiplierSpec::j_x(-3.0),
            MultiplierSpec::partial_x(),
        ] {
            let v = m.eval(0.0, 0);
            assert!(v.re.is_finite() && v.im.is_finite(), "{}", m.description());
        }
    }

    #[test]
    fn nan_symbol_rejected() {
        let g = Grid::new(8, 8, 2.0 * PI).unwrap();
        let f = forward_transform(&Field::from_fn(g, |x, _| x.cos())).unwrap();
        let bad = MultiplierSpec::real("log|xi|", |xi, _| xi.abs().ln() * 0.0);
        assert!(matches!(
            apply_multiplier(&f, &bad),
            Err(Error::NonFiniteSymbol { .. })
        ));
    }

    #[test]
    fn d_y_squared_fixes_cos_y() {
        let g = Grid::new(16, 16, 30.0).unwrap();
        let u = Field::from_fn(g, |_, y| y.cos());
        let out = inverse_transform(
            &apply_multiplier(&forward_transform(&u).unwrap(), &MultiplierSpec::d_y(2.0)).unwrap(),
        );
        for (a, b) in out.values().iter().zip(u.values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_x_differentiates() {
        let g = Grid::new(32, 8, 2.0 * PI).unwrap();
        let u = Field::from_fn(g, |x, y| (3.0 * x).sin() * y.cos());
        let du = inverse_transform(
            &apply_multiplier(&forward_transform(&u).unwrap(), &MultiplierSpec::partial_x())
                .unwrap(),
        );
        let exact = Field::from_fn(g, |x, y| 3.0 * (3.0 * x).cos() * y.cos());
        for (a, b) in du.values().iter().zip(exact.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
