//! Conserved quantities and sup-norm diagnostics.

use crate::error::{Error, Result};
use crate::params::DispersionParams;
use crate::spectral::norms::spectral_weight;
use crate::spectral::{
    apply_multiplier, forward_transform, inverse_transform, sup_norm_spectral, truncate, Field,
    MultiplierSpec, SpectralField, DEFAULT_OVERSAMPLE, TWO_THIRDS,
};

/// `int u^2 dx dy` by grid quadrature.
pub fn mass(u: &Field) -> f64 {
    let acc: f64 = u.values().iter().map(|v| v * v).sum();
    acc * u.grid().cell_area()
}

/// `1/2 int (D_x^{(1+a)/2} u)^2 ± (D_y^{(1+b)/2} u)^2 - u^3/3`.
pub fn energy(u: &Field, p: &DispersionParams) -> Result<f64> {
    let s = forward_transform(u)?;
    Ok(energy_spectral(&s, p))
}

/// [`energy`] from coefficients. The quadratic part is summed in frequency
/// (Nyquist lines excluded); the cubic part is the grid sum of `(P u)^3` with
/// `P` the 2/3 truncation, which is exact for the truncated field.
pub fn energy_spectral(s: &SpectralField, p: &DispersionParams) -> f64 {
    let g = s.grid();
    let ny = g.ny();
    let (ax, by) = (1.0 + p.alpha(), 1.0 + p.beta());
    let mut qx = 0.0;
    let mut qy = 0.0;
    for i in 0..g.nx() {
        if g.is_nyquist_x(i) {
            continue;
        }
        let xi = g.xi(i).abs();
        let wx = if xi == 0.0 { 0.0 } else { xi.powf(ax) };
        for q in 0..ny {
            if g.is_nyquist_y(q) {
                continue;
            }
            let n = g.mode_y(q).unsigned_abs() as f64;
            let wy = if n == 0.0 { 0.0 } else { n.powf(by) };
            let c2 = s.coeffs()[i * ny + q].norm_sqr();
            qx += wx * c2;
            qy += wy * c2;
        }
    }
    let w = spectral_weight(g);
    let cubic = cubic_integral(s);
    0.5 * (w * (qx + p.sign().value() * qy) - cubic / 3.0)
}

fn cubic_integral(s: &SpectralField) -> f64 {
    let pu = inverse_transform(&truncate(s, TWO_THIRDS));
    let acc: f64 = pu.values().iter().map(|v| v * v * v).sum();
    acc * s.grid().cell_area()
}

/// `(||u||_inf, ||u_x||_inf, ||u_y||_inf)` at the default oversampling.
pub fn sup_triple(s: &SpectralField) -> Result<(f64, f64, f64)> {
    let ux = apply_multiplier(s, &MultiplierSpec::partial_x())?;
    let uy = apply_multiplier(s, &MultiplierSpec::partial_y())?;
    Ok((
        sup_norm_spectral(s, DEFAULT_OVERSAMPLE)?,
        sup_norm_spectral(&ux, DEFAULT_OVERSAMPLE)?,
        sup_norm_spectral(&uy, DEFAULT_OVERSAMPLE)?,
    ))
}

/// Cumulative trapezoid integral of `values` over `times`; the first entry is 0.
pub fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    if times.len() != values.len() {
        return Err(Error::InvalidArgument(format!(
            "{} times but {} values",
            times.len(),
            values.len()
        )));
    }
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    for i in 0..times.len() {
        if i > 0 {
            let h = times[i] - times[i - 1];
            if !(h > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "times not increasing at index {i}"
                )));
            }
            acc += 0.5 * h * (values[i] + values[i - 1]);
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::params::Sign;
    use crate::spectral::{l2_norm, Grid};

    fn grid() -> Grid {
        Grid::new(32, 16, 20.0).unwrap()
    }

    #[test]
    fn zero_field() {
        let z = Field::zeros(grid());
        assert_eq!(mass(&z), 0.0);
        assert_eq!(energy(&z, &DispersionParams::zk()).unwrap(), 0.0);
    }

    #[test]
    fn cos_y_mass_and_energy() {
        let g = grid();
        let u = Field::from_fn(g, |_, y| y.cos());
        assert!((mass(&u) - g.lx() * PI).abs() < 1e-12 * g.lx());
        let e = energy(&u, &DispersionParams::zk()).unwrap();
        assert!((e - g.lx() * PI / 2.0).abs() < 1e-12 * g.lx(), "{e}");
        let minus = DispersionParams::new(1.0, 1.0, Sign::Minus).unwrap();
        let e = energy(&u, &minus).unwrap();
        assert!((e + g.lx() * PI / 2.0).abs() < 1e-12 * g.lx(), "{e}");
    }

    #[test]
    fn mass_matches_parseval() {
        let g = grid();
        let u = crate::initial::random_samples(g, 3);
        let s = forward_transform(&u).unwrap();
        let m = mass(&u);
        assert!((m - l2_norm(&s).powi(2)).abs() < 1e-12 * m);
    }

    #[test]
    fn odd_data_has_no_cubic_term() {
        let g = Grid::new(64, 8, 40.0).unwrap();
        let u = Field::from_fn(g, |x, y| x * (-x * x / 16.0).exp() * (1.0 + 0.5 * y.cos()));
        let c = cubic_integral(&forward_transform(&u).unwrap());
        assert!(c.abs() < 1e-12, "{c}");
    }

    #[test]
    fn cubic_term_closed_form() {
        // int (1 + cos y)^3 dy = 2π + 3π
        let g = grid();
        let u = Field::from_fn(g, |_, y| 1.0 + y.cos());
        let c = cubic_integral(&forward_transform(&u).unwrap());
        assert!((c - 5.0 * PI * g.lx()).abs() < 1e-11 * g.lx());
    }

    #[test]
    fn sup_triple_of_cos_y() {
        let g = grid();
        let s = forward_transform(&Field::from_fn(g, |_, y| y.cos())).unwrap();
        let (a, b, c) = sup_triple(&s).unwrap();
        assert!((a - 1.0).abs() < 1e-10);
        assert!(b < 1e-14);
        assert!((c - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trapezoid_of_line() {
        let t: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let v = t.clone();
        let c = cumulative_trapezoid(&t, &v).unwrap();
        assert!((c[10] - 0.5).abs() < 1e-15);
        assert!(cumulative_trapezoid(&[0.0, 0.0], &[1.0, 1.0]).is_err());
    }
}
