//! Continuous dependence of the nonlinear flow on the data.

use crate::error::{Error, Result};
use crate::params::DispersionParams;
use crate::rng::SplitMix64;
use crate::solver::{evolve, SolverConfig, Trajectory};
use crate::spectral::{field_l2_norm, forward_transform, sobolev_norm, Field};

/// Seed of the default perturbation direction.
pub const PERTURBATION_SEED: u64 = 0x5EED_0001;

/// Largest accepted max/min spread of `distance / delta` across rows.
pub const STABILITY_FACTOR: f64 = 2.0;

/// `phi` modulated by a random low-mode trigonometric sum (`|k| <= 1/4`,
/// `|n| <= 2`), scaled to unit `L^2`. It shares the support and resolution
/// of `phi`.
pub fn perturbation_direction(phi: &Field, seed: u64) -> Result<Field> {
    let mut rng = SplitMix64::new(seed);
    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            let a = rng.uniform(-1.0, 1.0);
            let k = rng.uniform(-0.25, 0.25);
            let n = (rng.next_u64() % 5) as f64 - 2.0;
            let th = rng.uniform(0.0, std::f64::consts::TAU);
            (a, k, n, th)
        })
        .collect();
    let g = *phi.grid();
    let ny = g.ny();
    let values: Vec<f64> = phi
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let (x, y) = (g.x(i / ny), g.y(i % ny));
            v * waves
                .iter()
                .map(|&(a, k, n, th)| a * (k * x + n * y + th).cos())
                .sum::<f64>()
        })
        .collect();
    let psi = Field::new(g, values)?;
    let norm = field_l2_norm(&psi);
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument(
            "perturbation direction vanishes for zero data".into(),
        ));
    }
    Field::new(g, psi.values().iter().map(|v| v / norm).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContDepRow {
    pub delta: f64,
    /// `sup_t ||u_delta - u||_{L^2}`.
    pub distance_l2: f64,
    /// `sup_t ||u_delta - u||_{H^{s-1}}`.
    pub distance_hs: f64,
    /// Set when the perturbed run failed.
    pub flag: Option<String>,
}

impl ContDepRow {
    pub fn ratio_l2(&self) -> f64 {
        self.distance_l2 / self.delta
    }

    pub fn ratio_hs(&self) -> f64 {
        self.distance_hs / self.delta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContDepTable {
    pub s: f64,
    pub rows: Vec<ContDepRow>,
}

impl ContDepTable {
    /// Largest over both norms of `max(distance/delta) / min(distance/delta)`
    /// across unflagged rows with `delta > 0`.
    pub fn spread(&self) -> f64 {
        let rows: Vec<&ContDepRow> = self
            .rows
            .iter()
            .filter(|r| r.delta > 0.0 && r.flag.is_none())
            .collect();
        if rows.is_empty() {
            return f64::INFINITY;
        }
        let spread = |f: &dyn Fn(&ContDepRow) -> f64| {
            let hi = rows.iter().map(|r| f(r)).fold(f64::MIN, f64::max);
            let lo = rows.iter().map(|r| f(r)).fold(f64::MAX, f64::min);
            hi / lo
        };
        spread(&|r| r.ratio_l2()).max(spread(&|r| r.ratio_hs()))
    }

    pub fn stable(&self) -> bool {
        self.rows.iter().all(|r| r.flag.is_none()) && self.spread() <= STABILITY_FACTOR
    }

    pub fn zero_row_exact(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.delta == 0.0)
            .all(|r| r.distance_l2 == 0.0 && r.distance_hs == 0.0)
    }
}

fn sup_distances(a: &Trajectory, b: &Trajectory, s: f64) -> Result<(f64, f64)> {
    if a.times != b.times {
        return Err(Error::InvalidArgument(
            "trajectories have different snapshot times".into(),
        ));
    }
    let mut d0 = 0.0_f64;
    let mut d1 = 0.0_f64;
    for (u, v) in a.fields.iter().zip(&b.fields) {
        let diff = forward_transform(&u.axpy(-1.0, v)?)?;
        d0 = d0.max(sobolev_norm(&diff, 0.0));
        d1 = d1.max(sobolev_norm(&diff, s - 1.0));
    }
    Ok((d0, d1))
}

/// Evolves `phi` and `phi + delta psi` for each `delta` with `psi` the
/// default perturbation direction of `phi`.
pub fn continuous_dependence(
    phi: &Field,
    deltas: &[f64],
    p: &DispersionParams,
    cfg: &SolverConfig,
    s: f64,
) -> Result<ContDepTable> {
    let psi = perturbation_direction(phi, PERTURBATION_SEED)?;
    continuous_dependence_along(phi, &psi, deltas, p, cfg, s)
}

pub fn continuous_dependence_along(
    phi: &Field,
    psi: &Field,
    deltas: &[f64],
    p: &DispersionParams,
    cfg: &SolverConfig,
    s: f64,
) -> Result<ContDepTable> {
    let sc = p.critical_s();
    if !(s > sc) {
        return Err(Error::ParameterDomain(format!(
            "s = {s} must exceed the critical regularity {sc}"
        )));
    }
    if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(Error::InvalidArgument(format!("delta = {d} must be >= 0")));
    }
    let base = evolve(phi, p, cfg)?;
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let data = phi.axpy(delta, psi)?;
        let row = match evolve(&data, p, cfg) {
            Ok(t) => {
                let (d0, d1) = sup_distances(&t, &base, s)?;
                ContDepRow {
                    delta,
                    distance_l2: d0,
                    distance_hs: d1,
                    flag: None,
                }
            }
            Err(e) => ContDepRow {
                delta,
                distance_l2: f64::NAN,
                distance_hs: f64::NAN,
                flag: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    Ok(ContDepTable { s, rows })
}
