//! Initial-data families used by the experiments.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::spectral::{forward_transform, inverse_transform, Field, Grid};

/// `A exp(-(x - x0)^2 / w^2) exp(kappa (cos y - 1))`: a Gaussian in `x`
/// times a smooth periodic bump in `y` peaked at `y = 0`.
///
/// The default sits right of centre on the `Lx = 64π` box because linear
/// waves of the `+` equation travel towards negative `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianData {
    pub amplitude: f64,
    pub width_x: f64,
    pub kappa_y: f64,
    pub center_x: f64,
}

impl Default for GaussianData {
    fn default() -> Self {
        Self {
            amplitude: 0.5,
            width_x: 6.0,
            kappa_y: 2.0,
            center_x: 40.0,
        }
    }
}

impl GaussianData {
    pub fn validate(&self) -> Result<()> {
        let ok = self.amplitude.is_finite()
            && self.width_x.is_finite()
            && self.width_x > 0.0
            && self.kappa_y.is_finite()
            && self.kappa_y >= 0.0
            && self.center_x.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("bad gaussian data {self:?}")))
        }
    }

    pub fn sample(&self, grid: Grid) -> Field {
        let GaussianData {
            amplitude,
            width_x,
            kappa_y,
            center_x,
        } = *self;
        Field::from_fn(grid, move |x, y| {
            let dx = (x - center_x) / width_x;
            amplitude * (-dx * dx).exp() * (kappa_y * (y.cos() - 1.0)).exp()
        })
    }
}

/// Smooth random field: a sum of `terms` Gaussian wave packets
/// `a exp(-(x-c)^2/w^2) cos(k x + n y + theta)` with `|n| <= max_n`.
pub fn random_smooth(grid: Grid, seed: u64, terms: usize, max_n: i64) -> Field {
    let mut rng = SplitMix64::new(seed);
    let packets: Vec<(f64, f64, f64, f64, f64, f64)> = (0..terms)
        .map(|_| {
            let a = rng.uniform(-1.0, 1.0);
            let c = rng.uniform(-3.0, 3.0);
            let w = rng.uniform(1.5, 3.0);
            let k = rng.uniform(-1.0, 1.0);
            let n = (rng.next_u64() % (2 * max_n as u64 + 1)) as f64 - max_n as f64;
            let th = rng.uniform(0.0, std::f64::consts::TAU);
            (a, c, w, k, n, th)
        })
        .collect();
    Field::from_fn(grid, move |x, y| {
        packets
            .iter()
            .map(|&(a, c, w, k, n, th)| {
                let d = (x - c) / w;
                a * (-d * d).exp() * (k * x + n * y + th).cos()
            })
            .sum()
    })
}

/// Uniform random samples in `[-1, 1]` with the Nyquist lines removed, so the
/// field lies in the space every multiplier preserves.
pub fn random_bandlimited(grid: Grid, seed: u64) -> Field {
    let mut rng = SplitMix64::new(seed);
    let raw = Field::from_fn(grid, |_, _| rng.uniform(-1.0, 1.0));
    let mut s = forward_transform(&raw).expect("finite samples");
    s.zero_nyquist();
    inverse_transform(&s)
}

/// Random samples in `[-1, 1]`, no filtering.
pub fn random_samples(grid: Grid, seed: u64) -> Field {
    let mut rng = SplitMix64::new(seed);
    Field::from_fn(grid, |_, _| rng.uniform(-1.0, 1.0))
}
