//! Spatial and time-mixed norms.

use super::field::{Field, SpectralField};
use super::grid::Grid;
use super::transform::{forward_transform, inverse_transform};
use crate::error::{Error, Result};

/// `(Lx * 2π) / (Nx Ny)^2`: converts `sum |c|^2` into the continuum `L^2` norm squared.
pub fn spectral_weight(g: &Grid) -> f64 {
    let n = g.len() as f64;
    g.lx() * g.ly() / (n * n)
}

/// `(sum_{xi,n} w(xi,n) |c|^2 * spectral_weight)^{1/2}`.
pub fn weighted_norm(f: &SpectralField, w: impl Fn(f64, i64) -> f64) -> f64 {
    let g = f.grid();
    let ny = g.ny();
    let mut acc = 0.0;
    for i in 0..g.nx() {
        let xi = g.xi(i);
        for q in 0..ny {
            acc += w(xi, g.mode_y(q)) * f.coeffs()[i * ny + q].norm_sqr();
        }
    }
    (acc * spectral_weight(g)).sqrt()
}

/// `L^2(R x T)` norm from the coefficients.
pub fn l2_norm(f: &SpectralField) -> f64 {
    let acc: f64 = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
    (acc * spectral_weight(f.grid())).sqrt()
}

/// `L^2` norm from the samples, `(dx dy sum u^2)^{1/2}`.
pub fn field_l2_norm(f: &Field) -> f64 {
    let acc: f64 = f.values().iter().map(|v| v * v).sum();
    (acc * f.grid().cell_area()).sqrt()
}

/// `H^s` norm with weight `(1 + xi^2 + n^2)^s`.
pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    if s == 0.0 {
        return l2_norm(f);
    }
    weighted_norm(f, |xi, n| (1.0 + xi * xi + (n * n) as f64).powf(s))
}

/// `||J_x^s f||_{L^2}`, weight `(1 + xi^2)^s`.
pub fn anisotropic_norm_x(f: &SpectralField, s: f64) -> f64 {
    if s == 0.0 {
        return l2_norm(f);
    }
    weighted_norm(f, |xi, _| (1.0 + xi * xi).powf(s))
}

/// `||J_y^s f||_{L^2}`, weight `(1 + n^2)^s`.
pub fn anisotropic_norm_y(f: &SpectralField, s: f64) -> f64 {
    if s == 0.0 {
        return l2_norm(f);
    }
    weighted_norm(f, |_, n| (1.0 + (n * n) as f64).powf(s))
}

/// Default oversampling factor for sup norms.
pub const DEFAULT_OVERSAMPLE: usize = 2;

fn check_oversample(oversample: usize) -> Result<()> {
    if matches!(oversample, 1 | 2 | 4) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "oversample must be 1, 2 or 4, got {oversample}"
        )))
    }
}

/// Max `|u|` of the band-limited interpolant sampled on a grid `oversample`
/// times finer along each axis.
pub fn sup_norm_spectral(f: &SpectralField, oversample: usize) -> Result<f64> {
    check_oversample(oversample)?;
    let fine = f.grid().refined(oversample)?;
    let padded = f.padded_to(fine)?;
    Ok(inverse_transform(&padded).max_abs())
}

/// `L^\infty_{xy}` norm of a field, evaluated by zero-padded interpolation.
pub fn sup_norm(f: &Field, oversample: usize) -> Result<f64> {
    check_oversample(oversample)?;
    if oversample == 1 {
        f.check_finite()?;
        return Ok(f.max_abs());
    }
    sup_norm_spectral(&forward_transform(f)?, oversample)
}

/// Time exponent of a mixed `L^p_T X` norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeExponent {
    One,
    Two,
    Infinity,
}

/// `L^p` norm in time of uniformly spaced samples `(t, ||u(t)||_X)`,
/// by the trapezoid rule on `|v|^p` (max for `p = ∞`).
pub fn mixed_norm(samples: &[(f64, f64)], p: TimeExponent) -> Result<f64> {
    if p == TimeExponent::Infinity {
        return Ok(samples.iter().fold(0.0_f64, |m, s| m.max(s.1.abs())));
    }
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 time samples, got {}",
            samples.len()
        )));
    }
    let h = samples[1].0 - samples[0].0;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("time samples must increase".into()));
    }
    for w in samples.windows(2) {
        let d = w[1].0 - w[0].0;
        if (d - h).abs() > 1e-9 * h.max(w[1].0.abs()) {
            return Err(Error::InvalidArgument(format!(
                "time samples must be uniform: step {d} vs {h}"
            )));
        }
    }
    let pow = |v: f64| match p {
        TimeExponent::One => v.abs(),
        _ => v * v,
    };
    let n = samples.len();
    let mut acc = 0.5 * (pow(samples[0].1) + pow(samples[n - 1].1));
    for s in &samples[1..n - 1] {
        acc += pow(s.1);
    }
    acc *= h;
    Ok(match p {
        TimeExponent::One => acc,
        _ => acc.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rustfft::num_complex::Complex64;

    use super::*;

    #[test]
    fn sobolev_single_mode() {
        let g = Grid::new(16, 8, 2.0 * PI).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_mode(2, 1, Complex64::new(3.0, 1.0)).unwrap();
        let l2 = l2_norm(&f);
        assert!((sobolev_norm(&f, 1.0) - 6f64.sqrt() * l2).abs() < 1e-14 * l2);
        assert!((anisotropic_norm_x(&f, 1.0) - 5f64.sqrt() * l2).abs() < 1e-14 * l2);
        assert!((anisotropic_norm_y(&f, 1.0) - 2f64.sqrt() * l2).abs() < 1e-14 * l2);
        assert_eq!(sobolev_norm(&SpectralField::zeros(g), 3.0), 0.0);
    }

    #[test]
    fn sup_of_cos_y() {
        let g = Grid::new(16, 8, 20.0).unwrap();
        let f = Field::from_fn(g, |_, y| y.cos());
        assert!((sup_norm(&f, 2).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(sup_norm(&Field::zeros(g), 2).unwrap(), 0.0);
        assert!(sup_norm(&f, 3).is_err());
    }

    #[test]
    fn sup_two_mode_matches_dense_sampling() {
        let lx = 16.0;
        let g = Grid::new(16, 8, lx).unwrap();
        let k = 2.0 * PI / lx;
        let exact = |x: f64, y: f64| (k * x).cos() + y.cos();
        let f = Field::from_fn(g, exact);
        // 10^6-point brute-force oracle on the continuous function.
        let mut dense = 0.0_f64;
        for a in 0..1000 {
            let x = -0.5 * lx + lx * a as f64 / 1000.0;
            for b in 0..1000 {
                let y = 2.0 * PI * b as f64 / 1000.0;
                dense = dense.max(exact(x, y).abs());
            }
        }
        let s = sup_norm(&f, 2).unwrap();
        assert!((s - dense).abs() < 1e-6, "{s} vs {dense}");
    }

    #[test]
    fn mixed_norm_examples() {
        let c = 2.5;
        let samples: Vec<(f64, f64)> = (0..11).map(|i| (0.3 * i as f64, c)).collect();
        assert!((mixed_norm(&samples, TimeExponent::One).unwrap() - c * 3.0).abs() < 1e-12);

        let ramp: Vec<(f64, f64)> = (0..1001).map(|i| (i as f64 / 1000.0, i as f64 / 1000.0)).collect();
        let v = mixed_norm(&ramp, TimeExponent::Two).unwrap();
        assert!((v - 1.0 / 3f64.sqrt()).abs() < 1e-5);
        assert_eq!(mixed_norm(&ramp, TimeExponent::Infinity).unwrap(), 1.0);

        assert!(mixed_norm(&ramp[..1], TimeExponent::Two).is_err());
        assert_eq!(mixed_norm(&ramp[..1], TimeExponent::Infinity).unwrap(), 0.0);
        let uneven = [(0.0, 1.0), (0.1, 1.0), (0.3, 1.0)];
        assert!(mixed_norm(&uneven, TimeExponent::One).is_err());
    }
}
