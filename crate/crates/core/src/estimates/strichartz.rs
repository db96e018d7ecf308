//! Frequency-localized Strichartz decay of the linear group.
//!
//! For each `j`, unit-norm data on the block `Q_y^k Q_x^j` is evolved over
//! `|t| <= T_w = 2^{-(ceil(beta) k + j)}` and
//! `(int_{-T_w}^{T_w} ||W0(t) phi||_{L^inf_{xy}}^2 dt)^{1/2}` is measured. The
//! slope of `log2` of that norm against `j` is compared with the predicted
//! rate `alpha/4 + 1/(2(1+beta))`.
//!
//! The sup norm peaks at `t = 0` and relaxes on the dispersion time of the
//! block, which is orders of magnitude shorter than `T_w` at high `j`. The
//! window is therefore cut into dyadic levels `[T_w 2^{-i-1}, T_w 2^{-i}]`
//! reaching below that time scale, each sampled uniformly.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::DispersionParams;
use crate::propagator::{dispersion_symbol, phase, strichartz_rate};
use crate::rng::SplitMix64;
use crate::spectral::projector::{dyadic_index, positive_modes_in_block};
use crate::spectral::{
    inverse_transform, l2_norm, mixed_norm, sup_norm_spectral, Grid, SpectralField, TimeExponent,
    DEFAULT_OVERSAMPLE,
};

/// Slack allowed on the fitted slope.
pub const SLOPE_SLACK: f64 = 0.15;
/// Largest accepted RMS residual of the fit.
pub const MAX_RESIDUAL_RMS: f64 = 0.3;
/// Largest accepted relative change when the time samples are doubled.
pub const MAX_QUADRATURE_CHANGE: f64 = 0.005;
/// Minimum number of x modes with `xi > 0` in each block.
pub const MIN_BLOCK_MODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    /// Equal real coefficients on every mode of the block.
    Flat,
    /// Unit-modulus coefficients with random phases (Hermitian pairs).
    RandomPhase { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrichartzOptions {
    /// Uniform intervals per dyadic level in the coarse pass; the reported
    /// norm uses at least twice as many.
    pub intervals_per_level: usize,
    /// Levels added below the dispersion time.
    pub extra_levels: u32,
    /// Minimum number of time samples in the fine pass.
    pub min_samples: usize,
    pub oversample: usize,
}

impl Default for StrichartzOptions {
    fn default() -> Self {
        Self {
            intervals_per_level: 8,
            extra_levels: 3,
            min_samples: 128,
            oversample: DEFAULT_OVERSAMPLE,
        }
    }
}

/// Time norm of one evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeNorm {
    pub norm: f64,
    /// Same quadrature with every other sample dropped.
    pub coarse_norm: f64,
    pub samples: usize,
}

impl TimeNorm {
    pub fn relative_change(&self) -> f64 {
        if self.norm == 0.0 {
            0.0
        } else {
            (self.norm - self.coarse_norm).abs() / self.norm
        }
    }
}

/// One `j` of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrichartzRow {
    pub j: u32,
    pub nx: usize,
    pub window: f64,
    pub time_norm: TimeNorm,
    pub log2_norm: f64,
    /// Outer-box / peak amplitude at `t = T_w`; reported, not gated.
    pub boundary_ratio: f64,
}

/// Least-squares fit of `log2` norms against `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub j_values: Vec<u32>,
    pub log2_norms: Vec<f64>,
    pub fitted_slope: f64,
    pub intercept: f64,
    pub predicted_slope: f64,
    pub residual_rms: f64,
    pub rows: Vec<StrichartzRow>,
}

impl DecayFit {
    pub fn slope_ok(&self) -> bool {
        self.fitted_slope <= self.predicted_slope + SLOPE_SLACK
    }

    pub fn residual_ok(&self) -> bool {
        self.residual_rms < MAX_RESIDUAL_RMS
    }

    pub fn quadrature_ok(&self) -> bool {
        self.max_quadrature_change() < MAX_QUADRATURE_CHANGE
    }

    pub fn max_quadrature_change(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.time_norm.relative_change())
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.slope_ok() && self.residual_ok() && self.quadrature_ok()
    }
}

/// Least squares `y = a + b x`; returns `(b, a, rms residual)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument(
            "a fit needs at least two points".into(),
        ));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("fit abscissae coincide".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let rss: f64 = x.iter().zip(y).map(|(u, v)| (v - a - b * u).powi(2)).sum();
    Ok((b, a, (rss / n).sqrt()))
}

/// Time scale on which data in x block `j` disperses.
pub fn dispersion_time(p: &DispersionParams, j: u32) -> f64 {
    let a = p.alpha();
    1.0 / ((2.0 + a) * (1.0 + a) * 2f64.powf((2.0 + a) * j as f64))
}

/// Window half-length `2^{-(ceil(beta) k + j)}`.
pub fn time_window(p: &DispersionParams, j: u32, k: u32) -> f64 {
    2f64.powi(-((p.ceil_beta() * k + j) as i32))
}

/// Coarsest restriction of `grid` in x whose Nyquist frequency reaches `2^j`.
pub fn block_grid(grid: &Grid, j: u32, k: u32) -> Result<Grid> {
    let top = 2f64.powi(j as i32);
    let need_nx = (top * grid.lx() / std::f64::consts::PI).ceil().max(4.0) as usize;
    let need_nx = need_nx.next_power_of_two();
    let need_lx = 2.0 * std::f64::consts::PI * (2 * MIN_BLOCK_MODES) as f64 / top;
    if grid.xi_max() < top {
        return Err(Error::UnderResolved {
            j,
            reason: format!("x Nyquist {} is below 2^j = {top}", grid.xi_max()),
            required_lx: need_lx,
            required_nx: need_nx,
        });
    }
    if 2usize.pow(k) > grid.ny() / 2 {
        return Err(Error::UnderResolved {
            j,
            reason: format!("y block k = {k} does not fit Ny = {}", grid.ny()),
            required_lx: need_lx,
            required_nx: need_nx,
        });
    }
    let g = grid.with_nx(need_nx.min(grid.nx()))?;
    let modes = positive_modes_in_block(&g, j);
    if modes < MIN_BLOCK_MODES {
        return Err(Error::UnderResolved {
            j,
            reason: format!("block holds {modes} modes, fewer than {MIN_BLOCK_MODES}"),
            required_lx: need_lx,
            required_nx: need_nx,
        });
    }
    Ok(g)
}

/// Unit-`L^2` data on block `(j, k)`; Nyquist lines are left empty.
pub fn block_data(grid: &Grid, j: u32, k: u32, kind: DataKind) -> Result<SpectralField> {
    let mut f = SpectralField::zeros(*grid);
    let ny = grid.ny();
    let mut rng = match kind {
        DataKind::RandomPhase { seed } => Some(SplitMix64::new(seed)),
        DataKind::Flat => None,
    };
    for i in 0..grid.nx() {
        if grid.is_nyquist_x(i) || dyadic_index(grid.xi(i)) != j {
            continue;
        }
        for q in 0..ny {
            if grid.is_nyquist_y(q) || dyadic_index(grid.mode_y(q) as f64) != k {
                continue;
            }
            let (m, n) = (grid.mode_x(i), grid.mode_y(q));
            // fill each Hermitian pair once, from its canonical member
            if (m, n) < (-m, -n) {
                continue;
            }
            let c = match rng.as_mut() {
                Some(r) => Complex64::cis(r.uniform(0.0, std::f64::consts::TAU)),
                None => Complex64::new(1.0, 0.0),
            };
            let c = if (m, n) == (-m, -n) {
                Complex64::new(c.re, 0.0)
            } else {
                c
            };
            f.set_mode(m, n, c)?;
            f.set_mode(-m, -n, c.conj())?;
        }
    }
    let norm = l2_norm(&f);
    if norm == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "block ({j}, {k}) holds no modes on this grid"
        )));
    }
    Ok(f.scaled(1.0 / norm))
}

/// Sparse `W0(t)` acting on the nonzero coefficients of `phi` only.
struct SparseFlow {
    grid: Grid,
    support: Vec<(usize, Complex64, f64)>,
}

impl SparseFlow {
    fn new(phi: &SpectralField, p: &DispersionParams) -> Self {
        let g = *phi.grid();
        let ny = g.ny();
        let support = phi
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(idx, c)| {
                c.norm_sqr() > 0.0 && !g.is_nyquist_x(idx / ny) && !g.is_nyquist_y(idx % ny)
            })
            .map(|(idx, c)| {
                let f = dispersion_symbol(p, g.xi(idx / ny), g.mode_y(idx % ny));
                (idx, *c, f)
            })
            .collect();
        Self { grid: g, support }
    }

    fn at(&self, t: f64) -> SpectralField {
        let mut out = SpectralField::zeros(self.grid);
        let c = out.coeffs_mut();
        for &(idx, v, f) in &self.support {
            c[idx] = v * Complex64::cis(phase(t, f));
        }
        out
    }

    fn sup(&self, t: f64, oversample: usize) -> Result<f64> {
        sup_norm_spectral(&self.at(t), oversample)
    }

    fn is_real_data(&self) -> bool {
        self.support.iter().all(|(_, c, _)| c.im == 0.0)
    }
}

/// Trapezoid integrals of `sup^2` over `[lo, hi]` with `n` and `n/2`
/// intervals; `n` doubles until they agree to [`LEVEL_TOLERANCE`].
fn level_integrals(
    flow: &SparseFlow,
    side: f64,
    lo: f64,
    hi: f64,
    n0: usize,
    opts: &StrichartzOptions,
) -> Result<(f64, f64, usize)> {
    let at = |i: usize, n: usize| lo + (hi - lo) * i as f64 / n as f64;
    let mut n = n0;
    let mut pts: Vec<(f64, f64)> = (0..=n)
        .map(|i| {
            let t = at(i, n);
            flow.sup(side * t, opts.oversample).map(|s| (t, s))
        })
        .collect::<Result<_>>()?;
    let mut evaluations = pts.len();
    loop {
        let fine = mixed_norm(&pts, TimeExponent::Two)?.powi(2);
        let coarse_pts: Vec<(f64, f64)> = pts.iter().step_by(2).copied().collect();
        let coarse = mixed_norm(&coarse_pts, TimeExponent::Two)?.powi(2);
        let settled = (fine - coarse).abs() <= LEVEL_TOLERANCE * fine;
        if settled || n >= n0 << MAX_LEVEL_DOUBLINGS {
            return Ok((fine, coarse, evaluations));
        }
        // insert midpoints
        let mut next = Vec::with_capacity(2 * n + 1);
        for (i, &p) in pts[..n].iter().enumerate() {
            next.push(p);
            let t = at(2 * i + 1, 2 * n);
            next.push((t, flow.sup(side * t, opts.oversample)?));
        }
        next.push(pts[n]);
        evaluations += n;
        n *= 2;
        pts = next;
    }
}

/// Relative agreement required between the two trapezoid rules on one level.
pub const LEVEL_TOLERANCE: f64 = 2e-3;
const MAX_LEVEL_DOUBLINGS: u32 = 5;

/// `(int_{-T}^{T} ||W0(t) phi||_inf^2 dt)^{1/2}` on the graded mesh reaching
/// down to `t_floor`. Each level is refined until halving its samples moves
/// its integral by less than [`LEVEL_TOLERANCE`].
pub fn windowed_time_norm(
    phi: &SpectralField,
    p: &DispersionParams,
    window: f64,
    t_floor: f64,
    opts: &StrichartzOptions,
) -> Result<TimeNorm> {
    if !(window > 0.0) || !(t_floor > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "window {window} and floor {t_floor} must be positive"
        )));
    }
    let flow = SparseFlow::new(phi, p);
    let levels = (window / t_floor).log2().ceil().max(0.0) as u32 + opts.extra_levels;
    let per_level = (2 * opts.intervals_per_level)
        .max(opts.min_samples.div_ceil(levels as usize + 1))
        .next_multiple_of(2);
    // real coefficients give |u(-t)| = |u(t)| up to reflection of (x, y)
    let sides: &[f64] = if flow.is_real_data() {
        &[1.0]
    } else {
        &[1.0, -1.0]
    };
    let mut fine2 = 0.0;
    let mut coarse2 = 0.0;
    let mut samples = 0;
    for &side in sides {
        for level in 0..=levels {
            let (lo, hi) = if level == levels {
                (0.0, window * 2f64.powi(-(levels as i32)))
            } else {
                (
                    window * 2f64.powi(-(level as i32) - 1),
                    window * 2f64.powi(-(level as i32)),
                )
            };
            let (f2, c2, n) = level_integrals(&flow, side, lo, hi, per_level, opts)?;
            fine2 += f2;
            coarse2 += c2;
            samples += n;
        }
    }
    let factor = if sides.len() == 1 { 2.0 } else { 1.0 };
    Ok(TimeNorm {
        norm: (factor * fine2).sqrt(),
        coarse_norm: (factor * coarse2).sqrt(),
        samples,
    })
}

/// Runs the sweep over `j_range` for y block `k` and fits the decay.
pub fn strichartz_experiment(
    p: &DispersionParams,
    k: u32,
    j_range: &[u32],
    grid: &Grid,
    data_kind: DataKind,
) -> Result<DecayFit> {
    strichartz_experiment_with(p, k, j_range, grid, data_kind, &StrichartzOptions::default())
}

pub fn strichartz_experiment_with(
    p: &DispersionParams,
    k: u32,
    j_range: &[u32],
    grid: &Grid,
    data_kind: DataKind,
    opts: &StrichartzOptions,
) -> Result<DecayFit> {
    if j_range.len() < 2 {
        return Err(Error::InvalidArgument(
            "the sweep needs at least two values of j".into(),
        ));
    }
    // validate every block before any evolution
    let grids: Vec<Grid> = j_range
        .iter()
        .map(|&j| block_grid(grid, j, k))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(j_range.len());
    for (&j, g) in j_range.iter().zip(&grids) {
        let phi = block_data(g, j, k, data_kind)?;
        let window = time_window(p, j, k);
        let tn = windowed_time_norm(&phi, p, window, dispersion_time(p, j), opts)?;
        let end = SparseFlow::new(&phi, p).at(window);
        rows.push(StrichartzRow {
            j,
            nx: g.nx(),
            window,
            time_norm: tn,
            log2_norm: tn.norm.log2(),
            boundary_ratio: inverse_transform(&end).boundary_ratio(),
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.j as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.log2_norm).collect();
    let (slope, intercept, rms) = linear_fit(&xs, &ys)?;
    Ok(DecayFit {
        j_values: j_range.to_vec(),
        log2_norms: ys,
        fitted_slope: slope,
        intercept,
        predicted_slope: -strichartz_rate(p),
        residual_rms: rms,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::params::Sign;

    #[test]
    fn fit_recovers_a_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 0.5 - 1.25 * v).collect();
        let (b, a, r) = linear_fit(&x, &y).unwrap();
        assert!((b + 1.25).abs() < 1e-14 && (a - 0.5).abs() < 1e-14 && r < 1e-14);
    }

    #[test]
    fn single_mode_norm_is_closed_form() {
        // |cos(xi0 x + tF)| has the same maximum at every t; on the sampling
        // grid the maximum is attained within half a phase step.
        let g = Grid::new(64, 8, 8.0 * PI).unwrap();
        let mut f = SpectralField::zeros(g);
        f.set_mode(1, 0, Complex64::new(1.0, 0.0)).unwrap();
        f.set_mode(-1, 0, Complex64::new(1.0, 0.0)).unwrap();
        let f = f.scaled(1.0 / l2_norm(&f));
        // unit L2 on an area 2π Lx: amplitude (π Lx)^{-1/2}
        let amp = 1.0 / (PI * g.lx()).sqrt();
        let p = DispersionParams::zk();
        let tn = windowed_time_norm(&f, &p, 0.25, 1e-3, &StrichartzOptions::default()).unwrap();
        let exact = (2.0 * 0.25_f64).sqrt() * amp;
        let r = tn.norm / exact;
        assert!(r <= 1.0 + 1e-12 && r >= (PI / 128.0).cos(), "{r}");
        assert!(tn.samples >= 128);
    }

    #[test]
    fn block_data_is_unit_real_and_localized() {
        let g = Grid::new(256, 8, 16.0 * PI).unwrap();
        for kind in [DataKind::Flat, DataKind::RandomPhase { seed: 3 }] {
            let f = block_data(&g, 3, 1, kind).unwrap();
            assert!((l2_norm(&f) - 1.0).abs() < 1e-14);
            assert!(f.hermitian_defect() < 1e-15);
            let q = crate::spectral::lp_project(&f, 3, 1);
            assert_eq!(q, f);
        }
    }

    #[test]
    fn under_resolved_block_names_requirements() {
        let g = Grid::new(64, 8, 8.0 * PI).unwrap();
        let p = DispersionParams::zk();
        match strichartz_experiment(&p, 0, &[4, 5], &g, DataKind::Flat) {
            Err(Error::UnderResolved { required_nx, .. }) => assert!(required_nx > 64),
            other => panic!("{other:?}"),
        }
        let g = Grid::new(4096, 8, 2.0 * PI).unwrap();
        match strichartz_experiment(&p, 0, &[4, 5], &g, DataKind::Flat) {
            Err(Error::UnderResolved { required_lx, .. }) => {
                assert!((required_lx - 16.0 * PI).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_phase_uses_both_time_directions() {
        let g = Grid::new(512, 8, 16.0 * PI).unwrap();
        let p = DispersionParams::new(1.0, 1.0, Sign::Minus).unwrap();
        let f = block_data(&g, 3, 1, DataKind::RandomPhase { seed: 1 }).unwrap();
        let opts = StrichartzOptions::default();
        let tn = windowed_time_norm(&f, &p, 2f64.powi(-4), 1e-4, &opts).unwrap();
        let flat = block_data(&g, 3, 1, DataKind::Flat).unwrap();
        let tf = windowed_time_norm(&flat, &p, 2f64.powi(-4), 1e-4, &opts).unwrap();
        // Flat data is real in x, so only t > 0 is sampled.
        assert!(tn.samples >= 2 * opts.min_samples);
        assert!(tn.samples > tf.samples, "{} vs {}", tn.samples, tf.samples);
    }
}
