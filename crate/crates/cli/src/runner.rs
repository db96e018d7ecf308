//! Executes a validated manifest and writes its artifacts.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use dzk_core::estimates::cont_dep::STABILITY_FACTOR;
use dzk_core::estimates::strichartz::{strichartz_experiment_with, MAX_QUADRATURE_CHANGE};
use dzk_core::estimates::vdc::VDC_CONSTANT;
use dzk_core::estimates::{
    continuous_dependence, energy_estimate_check, gaussian_pair, kato_ponce, oscillatory_kernel_h,
    poisson_residual, van_der_corput_check,
};
use dzk_core::initial::random_smooth;
use dzk_core::rng::SplitMix64;
use dzk_core::solver::{evolve, g_functional, Trajectory};
use dzk_core::spectral::snapshot::encode_snapshot;
use dzk_core::spectral::{forward_transform, sobolev_norm, truncate};
use dzk_core::{Error, Field, Grid};
use rayon::prelude::*;

use crate::error::CliError;
use crate::manifest::{
    ContDepOptions, EnergyOptions, EvolveOptions, ExperimentOptions, KatoPonceOptions, KernelSweep,
    Manifest, PoissonOptions, StrichartzSweep, VdcSweep,
};
use crate::results::{number, sort_rows, worst_verdict, write_results, ResultRow, Verdict};

/// Largest admissible `|H|` on the sweep.
pub const KERNEL_BOUND: f64 = 4.0;
/// Allowed `| |H| - sqrt(pi) |` at `beta = 1`.
pub const FRESNEL_TOLERANCE: f64 = 1e-3;
/// Largest accepted quadrature error estimate for `H`.
pub const KERNEL_ERROR: f64 = 1e-4;
pub const POISSON_TOLERANCE: f64 = 1e-12;
/// Peak-relative imaginary residue allowed after inverse transforms.
pub const REALNESS_TOLERANCE: f64 = 1e-12;
/// Relative agreement required of the linear energy ratio with `e^{-g}`.
pub const LINEAR_ENERGY_TOLERANCE: f64 = 1e-12;

/// Everything a run produces before it touches the disk.
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub rows: Vec<ResultRow>,
    pub notes: Vec<String>,
    pub ledger: Option<Vec<u8>>,
    pub snapshots: Vec<Field>,
}

impl RunOutput {
    pub fn verdict(&self) -> Verdict {
        worst_verdict(self.rows.iter().map(|r| &r.verdict))
    }
}

/// Paths written by [`run_manifest`].
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub results: PathBuf,
    pub summary: PathBuf,
    pub ledger: Option<PathBuf>,
    pub snapshots: Vec<PathBuf>,
    pub verdict: Verdict,
    pub summary_text: String,
}

/// Worker pool capped by `DZK_THREADS` when it is set.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("DZK_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Threads(format!("`{v}` is not a positive integer")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Threads(e.to_string()))
}

/// Runs the experiment and writes results, summary and any ledger or
/// snapshots into the manifest's output directory.
pub fn run_manifest(m: &Manifest) -> Result<RunArtifacts, CliError> {
    let out = thread_pool()?.install(|| execute(m));
    write_outputs(m, &out)
}

/// Computes the result rows of a manifest without writing anything.
pub fn execute(m: &Manifest) -> RunOutput {
    let mut out = match &m.options {
        ExperimentOptions::Evolve(o) => run_evolve(m, o),
        ExperimentOptions::Strichartz(o) => run_strichartz(m, o),
        ExperimentOptions::Vdc(o) => run_vdc(m, o),
        ExperimentOptions::KernelH(o) => run_kernel(m, o),
        ExperimentOptions::Poisson(o) => run_poisson(m, o),
        ExperimentOptions::KatoPonce(o) => run_kato_ponce(m, o),
        ExperimentOptions::ContDep(o) => run_cont_dep(m, o),
        ExperimentOptions::EnergyCheck(o) => run_energy(m, o),
    };
    sort_rows(&mut out.rows);
    out
}

fn base_row(m: &Manifest, experiment: &str) -> ResultRow {
    ResultRow {
        experiment: experiment.to_string(),
        alpha: m.params.alpha(),
        beta: m.params.beta(),
        sign: m.params.sign().as_i32(),
        j: None,
        k: None,
        measured: f64::NAN,
        predicted: None,
        ratio: None,
        quad_error: None,
        verdict: Verdict::Pass,
        index: 0,
    }
}

/// Row comparing `measured` with an upper threshold.
fn threshold_row(m: &Manifest, experiment: &str, measured: f64, threshold: f64) -> ResultRow {
    ResultRow {
        measured,
        predicted: Some(threshold),
        ratio: Some(measured / threshold),
        verdict: Verdict::from_bool(measured <= threshold),
        ..base_row(m, experiment)
    }
}

fn invalid_row(m: &Manifest, experiment: &str, notes: &mut Vec<String>, e: &Error) -> ResultRow {
    notes.push(format!("{experiment}: invalid run: {e}"));
    ResultRow {
        verdict: Verdict::Invalid,
        ..base_row(m, experiment)
    }
}

fn run_evolve(m: &Manifest, o: &EvolveOptions) -> RunOutput {
    let mut out = RunOutput::default();
    let phi = o.data.sample(m.grid());
    let traj = match evolve(&phi, &m.params, &m.solver) {
        Ok(t) => t,
        Err(e) => {
            out.rows.push(invalid_row(m, "evolve", &mut out.notes, &e));
            return out;
        }
    };
    let (steps, dt) = m.solver.steps();
    out.notes.push(format!(
        "steps {steps}, dt {}, snapshots {}, stride {}",
        number(dt),
        traj.len(),
        traj.snapshot_stride
    ));
    out.rows.push(threshold_row(m, "evolve_mass_drift", traj.mass_drift(), o.mass_tolerance));
    out.rows.push(threshold_row(
        m,
        "evolve_energy_drift",
        traj.energy_drift(),
        o.energy_tolerance,
    ));
    out.rows.push(threshold_row(
        m,
        "evolve_realness",
        traj.max_imag_residue,
        REALNESS_TOLERANCE,
    ));
    out.rows.push(g_row(m, &traj, &mut out.notes));
    let mut ledger = Vec::new();
    match traj.write_ledger_csv(&mut ledger) {
        Ok(()) => out.ledger = Some(ledger),
        Err(e) => out.rows.push(invalid_row(m, "evolve_ledger", &mut out.notes, &e)),
    }
    if o.snapshots {
        out.snapshots = traj.fields.clone();
    }
    out
}

fn g_row(m: &Manifest, traj: &Trajectory, notes: &mut Vec<String>) -> ResultRow {
    match g_functional(traj) {
        Ok(g) => ResultRow {
            measured: g,
            verdict: Verdict::from_bool(g.is_finite()),
            ..base_row(m, "evolve_g")
        },
        Err(e) => invalid_row(m, "evolve_g", notes, &e),
    }
}

fn run_strichartz(m: &Manifest, o: &StrichartzSweep) -> RunOutput {
    let grid = m.grid();
    let fits: Vec<_> = o
        .k_values
        .par_iter()
        .map(|&k| {
            (
                k,
                strichartz_experiment_with(&m.params, k, &o.j_values, &grid, o.data, &o.quadrature),
            )
        })
        .collect();
    let mut out = RunOutput::default();
    for (k, fit) in fits {
        let fit = match fit {
            Ok(f) => f,
            Err(e) => {
                let mut r = invalid_row(m, "strichartz_fit", &mut out.notes, &e);
                r.k = Some(k);
                out.rows.push(r);
                continue;
            }
        };
        for r in &fit.rows {
            let change = r.time_norm.relative_change();
            out.rows.push(ResultRow {
                j: Some(r.j),
                k: Some(k),
                measured: r.time_norm.norm,
                quad_error: Some(change),
                verdict: Verdict::from_bool(change < MAX_QUADRATURE_CHANGE),
                ..base_row(m, "strichartz")
            });
            out.notes.push(format!(
                "strichartz k={k} j={}: nx {}, window {}, samples {}, log2 norm {}, boundary ratio {}",
                r.j,
                r.nx,
                number(r.window),
                r.time_norm.samples,
                number(r.log2_norm),
                number(r.boundary_ratio)
            ));
        }
        out.notes.push(format!(
            "strichartz_fit k={k}: slope {} vs predicted {} (slack {}), residual rms {}, slope {}, residual {}, quadrature {}",
            number(fit.fitted_slope),
            number(fit.predicted_slope),
            number(dzk_core::estimates::strichartz::SLOPE_SLACK),
            number(fit.residual_rms),
            ok(fit.slope_ok()),
            ok(fit.residual_ok()),
            ok(fit.quadrature_ok())
        ));
        out.rows.push(ResultRow {
            k: Some(k),
            measured: fit.fitted_slope,
            predicted: Some(fit.predicted_slope),
            ratio: Some(fit.fitted_slope / fit.predicted_slope),
            quad_error: Some(fit.max_quadrature_change()),
            verdict: Verdict::from_bool(fit.passed()),
            ..base_row(m, "strichartz_fit")
        });
    }
    out
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "failed"
    }
}

fn run_vdc(m: &Manifest, o: &VdcSweep) -> RunOutput {
    let cells: Vec<(f64, u32, u32)> = o
        .alphas
        .iter()
        .flat_map(|&a| {
            o.j_values
                .iter()
                .flat_map(move |&j| (j..=j + o.l_span).map(move |l| (a, j, l)))
        })
        .collect();
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(a, j, l)| van_der_corput_check(j, l, a, o.x_samples))
        .collect();
    let mut out = RunOutput::default();
    for (&(a, j, l), res) in cells.iter().zip(results) {
        let mut row = match res {
            Ok(r) => {
                out.notes.push(format!(
                    "vdc alpha={a} j={j} l={l}: worst x {}",
                    number(r.worst_x)
                ));
                ResultRow {
                    measured: r.max_ratio * r.bound,
                    predicted: Some(r.bound),
                    ratio: Some(r.max_ratio),
                    quad_error: Some(r.max_error_ratio),
                    verdict: Verdict::from_bool(r.max_ratio <= VDC_CONSTANT),
                    ..base_row(m, "vdc")
                }
            }
            Err(e) => invalid_row(m, "vdc", &mut out.notes, &e),
        };
        row.alpha = a;
        row.j = Some(j);
        row.k = Some(l);
        out.rows.push(row);
    }
    out
}

fn run_kernel(m: &Manifest, o: &KernelSweep) -> RunOutput {
    let n = ((o.eta_max - o.eta_min) / o.eta_step + 1e-9).floor() as usize + 1;
    let etas: Vec<f64> = (0..n).map(|i| o.eta_min + o.eta_step * i as f64).collect();
    let sign = m.params.sign();
    let mut out = RunOutput::default();
    for &beta in &o.betas {
        let values: Result<Vec<_>, Error> = etas
            .par_iter()
            .map(|&eta| oscillatory_kernel_h(eta, beta, sign))
            .collect();
        let values = match values {
            Ok(v) => v,
            Err(e) => {
                let mut r = invalid_row(m, "kernel_h", &mut out.notes, &e);
                r.beta = beta;
                out.rows.push(r);
                continue;
            }
        };
        let max_h = values.iter().map(|h| h.value.norm()).fold(0.0, f64::max);
        let max_err = values.iter().map(|h| h.error).fold(0.0, f64::max);
        let mut row = threshold_row(m, "kernel_h", max_h, KERNEL_BOUND);
        row.beta = beta;
        row.quad_error = Some(max_err);
        if max_err > KERNEL_ERROR {
            row.verdict = Verdict::Invalid;
            out.notes.push(format!(
                "kernel_h beta={beta}: error estimate {} above {}",
                number(max_err),
                number(KERNEL_ERROR)
            ));
        }
        out.rows.push(row);
        if beta == 1.0 {
            let dev = values
                .iter()
                .map(|h| (h.value.norm() - PI.sqrt()).abs())
                .fold(0.0, f64::max);
            let mut row = threshold_row(m, "kernel_h_fresnel", dev, FRESNEL_TOLERANCE);
            row.beta = beta;
            row.quad_error = Some(max_err);
            out.rows.push(row);
        }
        out.notes.push(format!(
            "kernel_h beta={beta}: {} points on [{}, {}]",
            etas.len(),
            number(o.eta_min),
            number(o.eta_max)
        ));
    }
    out
}

fn run_poisson(m: &Manifest, o: &PoissonOptions) -> RunOutput {
    let mut out = RunOutput::default();
    for (i, &s) in o.scales.iter().enumerate() {
        let (fh, f) = gaussian_pair(s);
        let r = poisson_residual(fh, f, o.m_max);
        out.notes.push(format!("poisson row {i}: scale {}, residual {}", number(s), number(r)));
        let mut row = threshold_row(m, "poisson", r, POISSON_TOLERANCE);
        row.index = i;
        out.rows.push(row);
    }
    out
}

fn run_kato_ponce(m: &Manifest, o: &KatoPonceOptions) -> RunOutput {
    let coarse = m.grid();
    let mut out = RunOutput::default();
    let fine = match coarse.refined(2) {
        Ok(g) => g,
        Err(e) => {
            out.rows.push(invalid_row(m, "kato_ponce", &mut out.notes, &e));
            return out;
        }
    };
    let mut rng = SplitMix64::new(m.seed);
    let seeds: Vec<(u64, u64)> = (0..o.pairs).map(|_| (rng.next_u64(), rng.next_u64())).collect();
    let pair = |g: Grid, (a, b): (u64, u64)| {
        (random_smooth(g, a, o.terms, o.max_n), random_smooth(g, b, o.terms, o.max_n))
    };
    for (i, &s) in o.s_values.iter().enumerate() {
        let ratios: Result<Vec<(f64, f64)>, Error> = seeds
            .par_iter()
            .map(|&sd| {
                let (f0, g0) = pair(coarse, sd);
                let (f1, g1) = pair(fine, sd);
                Ok((kato_ponce(&f0, &g0, s)?.ratio, kato_ponce(&f1, &g1, s)?.ratio))
            })
            .collect();
        let mut row = match ratios {
            Ok(r) => {
                let change = r
                    .iter()
                    .map(|(a, b)| (b / a - 1.0).abs())
                    .fold(0.0, f64::max);
                let max0 = r.iter().map(|p| p.0).fold(0.0, f64::max);
                let max1 = r.iter().map(|p| p.1).fold(0.0, f64::max);
                out.notes.push(format!(
                    "kato_ponce row {i}: s {}, {} pairs, max ratio {} on {}x{}, {} on {}x{}",
                    number(s),
                    o.pairs,
                    number(max0),
                    coarse.nx(),
                    coarse.ny(),
                    number(max1),
                    fine.nx(),
                    fine.ny()
                ));
                let finite = max0.is_finite() && max1.is_finite();
                let mut row = threshold_row(m, "kato_ponce", change, o.max_change);
                if !finite {
                    row.verdict = Verdict::Fail;
                }
                row
            }
            Err(e) => invalid_row(m, "kato_ponce", &mut out.notes, &e),
        };
        row.index = i;
        out.rows.push(row);

        // exact zeros: a constant factor and an x-only factor
        let g = random_smooth(coarse, seeds[0].1, o.terms, o.max_n);
        let constant = Field::from_fn(coarse, |_, _| 1.0);
        let x_only = Field::from_fn(coarse, |x, _| 1.0 + (-x * x / 16.0).exp());
        for (name, f) in [("kato_ponce_constant", constant), ("kato_ponce_x_only", x_only)] {
            let mut row = match kato_ponce(&f, &g, s) {
                Ok(kp) => ResultRow {
                    measured: kp.commutator,
                    predicted: Some(0.0),
                    verdict: Verdict::from_bool(kp.commutator == 0.0),
                    ..base_row(m, name)
                },
                Err(e) => invalid_row(m, name, &mut out.notes, &e),
            };
            row.index = i;
            out.rows.push(row);
        }
    }
    out
}

fn run_cont_dep(m: &Manifest, o: &ContDepOptions) -> RunOutput {
    let mut out = RunOutput::default();
    let phi = o.data.sample(m.grid());
    let table = match continuous_dependence(&phi, &o.deltas, &m.params, &m.solver, o.s) {
        Ok(t) => t,
        Err(e) => {
            out.rows.push(invalid_row(m, "cont_dep_spread", &mut out.notes, &e));
            return out;
        }
    };
    for (i, r) in table.rows.iter().enumerate() {
        out.notes.push(format!(
            "cont_dep row {i}: delta {}, L2 distance {}, H^{} distance {}{}",
            number(r.delta),
            number(r.distance_l2),
            number(o.s - 1.0),
            number(r.distance_hs),
            r.flag.as_ref().map(|f| format!(", flagged: {f}")).unwrap_or_default()
        ));
        for (name, d) in [("cont_dep_l2", r.distance_l2), ("cont_dep_hs", r.distance_hs)] {
            let verdict = if r.flag.is_some() {
                Verdict::Invalid
            } else if r.delta == 0.0 {
                Verdict::from_bool(d == 0.0)
            } else {
                Verdict::Pass
            };
            out.rows.push(ResultRow {
                measured: d,
                ratio: (r.delta > 0.0).then(|| d / r.delta),
                verdict,
                index: i,
                ..base_row(m, name)
            });
        }
    }
    let spread = table.spread();
    let mut row = threshold_row(m, "cont_dep_spread", spread, STABILITY_FACTOR);
    row.verdict = Verdict::from_bool(table.stable() && table.zero_row_exact());
    out.rows.push(row);
    out
}

fn run_energy(m: &Manifest, o: &EnergyOptions) -> RunOutput {
    let mut out = RunOutput::default();
    let phi = o.data.sample(m.grid());
    let result = (|| -> Result<(f64, f64), Error> {
        let traj = evolve(&phi, &m.params, &m.solver)?;
        // the solver evolves the dealiased band of the data
        let band = truncate(&forward_transform(&phi)?, m.solver.dealias);
        let r = energy_estimate_check(&traj, o.s, sobolev_norm(&band, o.s))?;
        Ok((r, g_functional(&traj)?))
    })();
    match result {
        Ok((r, g)) => {
            out.notes.push(format!("energy_check: s {}, g(T) {}", number(o.s), number(g)));
            out.rows.push(threshold_row(m, "energy_check", r, o.bound));
            if !m.solver.nonlinear {
                let expected = (-g).exp();
                let rel = r / expected;
                out.rows.push(ResultRow {
                    measured: r,
                    predicted: Some(expected),
                    ratio: Some(rel),
                    verdict: Verdict::from_bool((rel - 1.0).abs() <= LINEAR_ENERGY_TOLERANCE),
                    ..base_row(m, "energy_check_linear")
                });
            }
        }
        Err(e) => out.rows.push(invalid_row(m, "energy_check", &mut out.notes, &e)),
    }
    out
}

/// The summary report of one run.
pub fn summary_text(m: &Manifest, out: &RunOutput) -> String {
    let mut s = String::new();
    s.push_str(&format!("run_id: {}\n", m.run_id));
    s.push_str(&format!("experiment: {}\n", m.experiment.name()));
    s.push_str(&format!(
        "params: alpha={} beta={} sign={}\n",
        m.params.alpha(),
        m.params.beta(),
        m.params.sign().as_i32()
    ));
    if let Some(g) = m.grid {
        s.push_str(&format!("grid: nx={} ny={} lx={}\n", g.nx(), g.ny(), number(g.lx())));
    }
    s.push_str(&format!("seed: {}\n", m.seed));
    s.push_str(&format!("verdict: {}\n\n", out.verdict()));
    for r in &out.rows {
        let mut line = r.experiment.clone();
        if r.alpha != m.params.alpha() {
            line.push_str(&format!(" alpha={}", r.alpha));
        }
        if r.beta != m.params.beta() {
            line.push_str(&format!(" beta={}", r.beta));
        }
        if let Some(j) = r.j {
            line.push_str(&format!(" j={j}"));
        }
        if let Some(k) = r.k {
            line.push_str(&format!(" k={k}"));
        }
        line.push_str(&format!(": measured {}", number(r.measured)));
        if let Some(p) = r.predicted {
            line.push_str(&format!(", predicted {}", number(p)));
        }
        if let Some(q) = r.ratio {
            line.push_str(&format!(", ratio {}", number(q)));
        }
        line.push_str(&format!(" -> {}\n", r.verdict));
        s.push_str(&line);
    }
    if !out.notes.is_empty() {
        s.push_str("\nnotes:\n");
        for n in &out.notes {
            s.push_str(&format!("  {n}\n"));
        }
    }
    s
}

pub fn write_outputs(m: &Manifest, out: &RunOutput) -> Result<RunArtifacts, CliError> {
    fs::create_dir_all(&m.output_dir)?;
    let path = |suffix: &str| m.output_dir.join(format!("{}{suffix}", m.run_id));
    let results = path("_results.csv");
    let mut buf = Vec::new();
    write_results(&mut buf, &out.rows)?;
    fs::write(&results, buf)?;
    let summary = path("_summary.txt");
    let summary_text = summary_text(m, out);
    fs::write(&summary, &summary_text)?;
    let ledger = match &out.ledger {
        Some(bytes) => {
            let p = path("_ledger.csv");
            fs::write(&p, bytes)?;
            Some(p)
        }
        None => None,
    };
    let mut snapshots = Vec::with_capacity(out.snapshots.len());
    for (i, f) in out.snapshots.iter().enumerate() {
        let p = path(&format!("_t{i}.dzkf"));
        fs::write(&p, encode_snapshot(f))?;
        snapshots.push(p);
    }
    Ok(RunArtifacts {
        results,
        summary,
        ledger,
        snapshots,
        verdict: out.verdict(),
        summary_text,
    })
}
