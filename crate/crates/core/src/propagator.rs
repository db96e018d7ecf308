//! The dispersion symbol and the exact linear group `W0(t)`.

use rustfft::num_complex::Complex64;

use crate::error::Result;
use crate::params::DispersionParams;
use crate::spectral::{Grid, SpectralField};

/// `F(xi, n) = xi |xi|^{1+alpha} + sign * xi |n|^{1+beta}`; real and odd in `xi`.
pub fn dispersion_symbol(p: &DispersionParams, xi: f64, n: i64) -> f64 {
    if xi == 0.0 {
        return 0.0;
    }
    let lon = xi * xi.abs().powf(1.0 + p.alpha());
    let tra = if n == 0 {
        0.0
    } else {
        xi * (n.unsigned_abs() as f64).powf(1.0 + p.beta())
    };
    lon + p.sign().value() * tra
}

/// Well-posedness threshold on `s`; see [`DispersionParams::critical_s`].
pub fn critical_regularity(p: &DispersionParams) -> f64 {
    p.critical_s()
}

/// Dyadic decay exponent `alpha/4 + 1/(2(1+beta))`.
pub fn strichartz_rate(p: &DispersionParams) -> f64 {
    p.strichartz_exponent()
}

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;
const REDUCE_ABOVE: f64 = 4_294_967_296.0;

/// `t * f` reduced into roughly `[-π, π]`. For `|t f| > 2^32` the product is
/// formed exactly with an FMA and reduced against a two-word `2π`.
pub fn phase(t: f64, f: f64) -> f64 {
    let p = t * f;
    if p.abs() <= REDUCE_ABOVE {
        return p;
    }
    let e = t.mul_add(f, -p);
    let k = (p / TWO_PI_HI).round();
    (-k).mul_add(TWO_PI_HI, p) - k * TWO_PI_LO + e
}

/// `W0(t)` specialised to one grid: the symbol table is built once.
#[derive(Debug, Clone)]
pub struct Propagator {
    grid: Grid,
    params: DispersionParams,
    symbol: Vec<f64>,
}

impl Propagator {
    pub fn new(grid: Grid, params: DispersionParams) -> Self {
        let ny = grid.ny();
        let mut symbol = Vec::with_capacity(grid.len());
        for i in 0..grid.nx() {
            let xi = grid.xi(i);
            for q in 0..ny {
                symbol.push(dispersion_symbol(&params, xi, grid.mode_y(q)));
            }
        }
        Self {
            grid,
            params,
            symbol,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn params(&self) -> &DispersionParams {
        &self.params
    }

    /// `F` at every grid frequency, FFT order.
    pub fn symbol_table(&self) -> &[f64] {
        &self.symbol
    }

    /// Phase factors `e^{i t F}`, Nyquist lines set to zero.
    pub fn phases(&self, t: f64) -> Vec<Complex64> {
        let g = &self.grid;
        let ny = g.ny();
        let mut out = Vec::with_capacity(g.len());
        for i in 0..g.nx() {
            for q in 0..ny {
                if g.is_nyquist_x(i) || g.is_nyquist_y(q) {
                    out.push(Complex64::new(0.0, 0.0));
                } else {
                    let (s, c) = phase(t, self.symbol[i * ny + q]).sin_cos();
                    out.push(Complex64::new(c, s));
                }
            }
        }
        out
    }

    pub fn evolve(&self, f: &SpectralField, t: f64) -> Result<SpectralField> {
        crate::spectral::field::same_grid(f.grid(), &self.grid)?;
        let mut out = f.clone();
        if t == 0.0 {
            out.zero_nyquist();
            return Ok(out);
        }
        let ph = self.phases(t);
        for (c, e) in out.coeffs_mut().iter_mut().zip(&ph) {
            *c *= e;
        }
        Ok(out)
    }
}

/// `W0(t) f`: multiplies each coefficient by `e^{i t F(xi, n)}`.
pub fn linear_evolve(f: &SpectralField, t: f64, p: &DispersionParams) -> SpectralField {
    Propagator::new(*f.grid(), *p)
        .evolve(f, t)
        .expect("propagator built on the field's grid")
}
