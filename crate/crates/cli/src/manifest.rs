//! Experiment manifests: parsing and total validation.
//!
//! A manifest is a JSON object. Every field is checked, and every cell an
//! experiment will visit is checked, before any computation starts.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use dzk_core::estimates::strichartz::block_grid;
use dzk_core::estimates::{DataKind, StrichartzOptions};
use dzk_core::initial::GaussianData;
use dzk_core::solver::SolverConfig;
use dzk_core::{DispersionParams, Grid, Sign};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, ManifestError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Evolve,
    Strichartz,
    Vdc,
    KernelH,
    Poisson,
    KatoPonce,
    ContDep,
    EnergyCheck,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Evolve => "evolve",
            ExperimentKind::Strichartz => "strichartz",
            ExperimentKind::Vdc => "vdc",
            ExperimentKind::KernelH => "kernel_h",
            ExperimentKind::Poisson => "poisson",
            ExperimentKind::KatoPonce => "kato_ponce",
            ExperimentKind::ContDep => "cont_dep",
            ExperimentKind::EnergyCheck => "energy_check",
        }
    }

    fn needs_grid(self) -> bool {
        !matches!(
            self,
            ExperimentKind::Vdc | ExperimentKind::KernelH | ExperimentKind::Poisson
        )
    }

    fn uses_solver(self) -> bool {
        matches!(
            self,
            ExperimentKind::Evolve | ExperimentKind::ContDep | ExperimentKind::EnergyCheck
        )
    }
}

/// `Lx` as a number or as a multiple of π written `"64pi"`, `"64π"` or `"pi"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Length {
    Number(f64),
    Text(String),
}

impl Length {
    pub fn value(&self) -> Result<f64, String> {
        match self {
            Length::Number(v) => Ok(*v),
            Length::Text(s) => {
                let t = s.trim();
                let head = t
                    .strip_suffix("pi")
                    .or_else(|| t.strip_suffix('π'))
                    .ok_or_else(|| format!("`{s}` is neither a number nor a multiple of pi"))?
                    .trim();
                let factor = if head.is_empty() {
                    1.0
                } else {
                    head.parse::<f64>()
                        .map_err(|_| format!("`{s}` is neither a number nor a multiple of pi"))?
                };
                Ok(factor * PI)
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawManifest {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub run_id: Option<String>,
    pub params: RawParams,
    #[serde(default)]
    pub grid: Option<RawGrid>,
    #[serde(default)]
    pub solver: Option<RawSolver>,
    pub seed: u64,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub options: Option<Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub alpha: f64,
    pub beta: f64,
    pub sign: i32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub nx: usize,
    pub ny: usize,
    pub lx: Length,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSolver {
    pub dt: Option<f64>,
    pub t_final: Option<f64>,
    pub dealias: Option<f64>,
    pub cfl_safety: Option<f64>,
    pub snapshot_stride: Option<usize>,
    pub nonlinear: Option<bool>,
    /// `null` disables the check.
    #[serde(default, deserialize_with = "explicit_option")]
    pub boundary_tolerance: Option<Option<f64>>,
}

fn explicit_option<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Option<f64>>, D::Error> {
    Ok(Some(Option::<f64>::deserialize(d)?))
}

/// Gaussian initial data; absent fields take the library defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGaussian {
    pub amplitude: Option<f64>,
    pub width_x: Option<f64>,
    pub kappa_y: Option<f64>,
    pub center_x: Option<f64>,
}

impl RawGaussian {
    fn build(&self) -> GaussianData {
        let d = GaussianData::default();
        GaussianData {
            amplitude: self.amplitude.unwrap_or(d.amplitude),
            width_x: self.width_x.unwrap_or(d.width_x),
            kappa_y: self.kappa_y.unwrap_or(d.kappa_y),
            center_x: self.center_x.unwrap_or(d.center_x),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvolve {
    data: Option<RawGaussian>,
    snapshots: Option<bool>,
    mass_tolerance: Option<f64>,
    energy_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawDataKind {
    Flat,
    RandomPhase,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStrichartz {
    k_values: Option<Vec<u32>>,
    j_values: Option<Vec<u32>>,
    data: Option<RawDataKind>,
    intervals_per_level: Option<usize>,
    extra_levels: Option<u32>,
    min_samples: Option<usize>,
    oversample: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVdc {
    j_values: Option<Vec<u32>>,
    l_span: Option<u32>,
    alphas: Option<Vec<f64>>,
    x_samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernel {
    betas: Option<Vec<f64>>,
    eta_min: Option<f64>,
    eta_max: Option<f64>,
    eta_step: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoisson {
    scales: Option<Vec<f64>>,
    m_max: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKatoPonce {
    pairs: Option<usize>,
    s_values: Option<Vec<f64>>,
    terms: Option<usize>,
    max_n: Option<i64>,
    max_change: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContDep {
    s: Option<f64>,
    deltas: Option<Vec<f64>>,
    data: Option<RawGaussian>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnergy {
    s: Option<f64>,
    data: Option<RawGaussian>,
    bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOptions {
    pub data: GaussianData,
    pub snapshots: bool,
    pub mass_tolerance: f64,
    pub energy_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrichartzSweep {
    pub k_values: Vec<u32>,
    pub j_values: Vec<u32>,
    pub data: DataKind,
    pub quadrature: StrichartzOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VdcSweep {
    pub j_values: Vec<u32>,
    pub l_span: u32,
    pub alphas: Vec<f64>,
    pub x_samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelSweep {
    pub betas: Vec<f64>,
    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonOptions {
    pub scales: Vec<f64>,
    pub m_max: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KatoPonceOptions {
    pub pairs: usize,
    pub s_values: Vec<f64>,
    pub terms: usize,
    pub max_n: i64,
    pub max_change: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContDepOptions {
    pub s: f64,
    pub deltas: Vec<f64>,
    pub data: GaussianData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyOptions {
    pub s: f64,
    pub data: GaussianData,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentOptions {
    Evolve(EvolveOptions),
    Strichartz(StrichartzSweep),
    Vdc(VdcSweep),
    KernelH(KernelSweep),
    Poisson(PoissonOptions),
    KatoPonce(KatoPonceOptions),
    ContDep(ContDepOptions),
    EnergyCheck(EnergyOptions),
}

/// A validated manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub experiment: ExperimentKind,
    pub run_id: String,
    pub params: DispersionParams,
    pub grid: Option<Grid>,
    pub solver: SolverConfig,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub options: ExperimentOptions,
}

impl Manifest {
    /// The grid of a grid-based experiment.
    pub fn grid(&self) -> Grid {
        self.grid.expect("validated manifest carries a grid")
    }
}

fn fail<T>(field: &str, reason: impl Into<String>) -> Result<T, ManifestError> {
    Err(ManifestError {
        field: field.to_string(),
        reason: reason.into(),
    })
}

fn positive(field: &str, v: f64) -> Result<f64, ManifestError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        fail(field, format!("{v} must be a positive finite number"))
    }
}

fn non_empty<T: Clone>(field: &str, v: Option<Vec<T>>, default: Vec<T>) -> Result<Vec<T>, ManifestError> {
    let v = v.unwrap_or(default);
    if v.is_empty() {
        fail(field, "must not be empty")
    } else {
        Ok(v)
    }
}

fn gaussian(field: &str, raw: Option<RawGaussian>) -> Result<GaussianData, ManifestError> {
    let g = raw.unwrap_or_default().build();
    g.validate().or_else(|e| fail(field, e.to_string()))?;
    Ok(g)
}

fn parse_options<T: DeserializeOwned + Default>(v: &Option<Value>) -> Result<T, ManifestError> {
    match v {
        None | Some(Value::Null) => Ok(T::default()),
        Some(v) => serde_path_to_error::deserialize(v).or_else(|e| {
            let path = e.path().to_string();
            let field = if path == "." {
                "options".to_string()
            } else {
                format!("options.{path}")
            };
            fail(&field, e.into_inner().to_string())
        }),
    }
}

/// Parses and validates manifest text. `base` resolves a relative `output_dir`.
pub fn parse_manifest(text: &str, base: &Path, default_run_id: &str) -> Result<Manifest, ManifestError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawManifest = serde_path_to_error::deserialize(de).or_else(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "manifest".to_string() } else { path };
        fail(&field, e.into_inner().to_string())
    })?;
    validate(raw, base, default_run_id)
}

/// Reads, parses and validates a manifest file. The run id defaults to the
/// file stem and `output_dir` is relative to the manifest's directory.
pub fn load_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("run")
        .to_string();
    Ok(parse_manifest(&text, base, &stem)?)
}

pub fn validate(raw: RawManifest, base: &Path, default_run_id: &str) -> Result<Manifest, ManifestError> {
    let kind = raw.experiment;
    let run_id = raw.run_id.clone().unwrap_or_else(|| default_run_id.to_string());
    if run_id.is_empty()
        || !run_id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
    {
        return fail("run_id", format!("`{run_id}` may only use [A-Za-z0-9_.-]"));
    }

    let sign = Sign::from_i32(raw.params.sign).or_else(|e| fail("params.sign", e.to_string()))?;
    if !(raw.params.alpha.is_finite() && raw.params.alpha > -1.0) {
        return fail(
            "params.alpha",
            format!("alpha = {} violates α > −1", raw.params.alpha),
        );
    }
    if !(raw.params.beta.is_finite() && raw.params.beta >= 1.0) {
        return fail(
            "params.beta",
            format!("beta = {} violates β ≥ 1", raw.params.beta),
        );
    }
    let params = DispersionParams::new(raw.params.alpha, raw.params.beta, sign)
        .or_else(|e| fail("params", e.to_string()))?;

    let grid = match (&raw.grid, kind.needs_grid()) {
        (Some(g), _) => {
            let lx = g.lx.value().or_else(|e| fail("grid.lx", e))?;
            if !(lx.is_finite() && lx > 0.0) {
                return fail("grid.lx", format!("{lx} must be positive"));
            }
            for (name, n) in [("grid.nx", g.nx), ("grid.ny", g.ny)] {
                if n < 4 || !n.is_power_of_two() {
                    return fail(name, format!("{n} must be a power of two, at least 4"));
                }
            }
            Some(Grid::new(g.nx, g.ny, lx).or_else(|e| fail("grid", e.to_string()))?)
        }
        (None, true) => return fail("grid", format!("required by experiment `{}`", kind.name())),
        (None, false) => None,
    };

    let solver = build_solver(raw.solver.as_ref(), kind)?;

    let options = match kind {
        ExperimentKind::Evolve => {
            let o: RawEvolve = parse_options(&raw.options)?;
            ExperimentOptions::Evolve(EvolveOptions {
                data: gaussian("options.data", o.data)?,
                snapshots: o.snapshots.unwrap_or(true),
                mass_tolerance: positive("options.mass_tolerance", o.mass_tolerance.unwrap_or(1e-8))?,
                energy_tolerance: positive(
                    "options.energy_tolerance",
                    o.energy_tolerance.unwrap_or(1e-6),
                )?,
            })
        }
        ExperimentKind::Strichartz => {
            let o: RawStrichartz = parse_options(&raw.options)?;
            let d = StrichartzOptions::default();
            let quadrature = StrichartzOptions {
                intervals_per_level: o.intervals_per_level.unwrap_or(d.intervals_per_level),
                extra_levels: o.extra_levels.unwrap_or(d.extra_levels),
                min_samples: o.min_samples.unwrap_or(d.min_samples),
                oversample: o.oversample.unwrap_or(d.oversample),
            };
            if quadrature.intervals_per_level == 0 {
                return fail("options.intervals_per_level", "must be positive");
            }
            if quadrature.min_samples < 128 {
                return fail("options.min_samples", "at least 128 time samples are required");
            }
            if !matches!(quadrature.oversample, 1 | 2 | 4) {
                return fail("options.oversample", "must be 1, 2 or 4");
            }
            let k_values = non_empty("options.k_values", o.k_values, vec![0])?;
            let j_values = non_empty("options.j_values", o.j_values, (4..=8).collect())?;
            if j_values.len() < 2 {
                return fail("options.j_values", "the fit needs at least two values of j");
            }
            let g = grid.expect("checked above");
            for &k in &k_values {
                for &j in &j_values {
                    if let Err(e) = block_grid(&g, j, k) {
                        return fail("options.j_values", e.to_string());
                    }
                }
            }
            let data = match o.data.unwrap_or(RawDataKind::Flat) {
                RawDataKind::Flat => DataKind::Flat,
                RawDataKind::RandomPhase => DataKind::RandomPhase { seed: raw.seed },
            };
            ExperimentOptions::Strichartz(StrichartzSweep {
                k_values,
                j_values,
                data,
                quadrature,
            })
        }
        ExperimentKind::Vdc => {
            let o: RawVdc = parse_options(&raw.options)?;
            let j_values = non_empty("options.j_values", o.j_values, (4..=7).collect())?;
            if j_values.contains(&0) {
                return fail("options.j_values", "j must be at least 1");
            }
            let alphas = non_empty("options.alphas", o.alphas, vec![params.alpha()])?;
            if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > -1.0)) {
                return fail("options.alphas", format!("alpha = {a} violates α > −1"));
            }
            let x_samples = o.x_samples.unwrap_or(256);
            if x_samples < 2 {
                return fail("options.x_samples", "must be at least 2");
            }
            ExperimentOptions::Vdc(VdcSweep {
                j_values,
                l_span: o.l_span.unwrap_or(6),
                alphas,
                x_samples,
            })
        }
        ExperimentKind::KernelH => {
            let o: RawKernel = parse_options(&raw.options)?;
            let betas = non_empty("options.betas", o.betas, vec![params.beta()])?;
            if let Some(b) = betas.iter().find(|b| !(b.is_finite() && **b >= 1.0)) {
                return fail("options.betas", format!("beta = {b} violates β ≥ 1"));
            }
            let eta_min = o.eta_min.unwrap_or(-50.0);
            let eta_max = o.eta_max.unwrap_or(50.0);
            if !(eta_min.is_finite() && eta_max.is_finite() && eta_min <= eta_max) {
                return fail("options.eta_max", format!("[{eta_min}, {eta_max}] is not an interval"));
            }
            ExperimentOptions::KernelH(KernelSweep {
                betas,
                eta_min,
                eta_max,
                eta_step: positive("options.eta_step", o.eta_step.unwrap_or(0.5))?,
            })
        }
        ExperimentKind::Poisson => {
            let o: RawPoisson = parse_options(&raw.options)?;
            let scales = non_empty("options.scales", o.scales, vec![1.0, 10.0])?;
            for &s in &scales {
                positive("options.scales", s)?;
            }
            let m_max = o.m_max.unwrap_or(200);
            if m_max == 0 {
                return fail("options.m_max", "must be positive");
            }
            ExperimentOptions::Poisson(PoissonOptions { scales, m_max })
        }
        ExperimentKind::KatoPonce => {
            let o: RawKatoPonce = parse_options(&raw.options)?;
            let s_values = non_empty("options.s_values", o.s_values, vec![1.0, 2.0, 2.5])?;
            if let Some(s) = s_values.iter().find(|s| !(s.is_finite() && **s >= 1.0)) {
                return fail("options.s_values", format!("s = {s} must be at least 1"));
            }
            let pairs = o.pairs.unwrap_or(100);
            if pairs == 0 {
                return fail("options.pairs", "must be positive");
            }
            let terms = o.terms.unwrap_or(3);
            if terms == 0 {
                return fail("options.terms", "must be positive");
            }
            let max_n = o.max_n.unwrap_or(3);
            if max_n < 1 {
                return fail("options.max_n", "must be at least 1");
            }
            ExperimentOptions::KatoPonce(KatoPonceOptions {
                pairs,
                s_values,
                terms,
                max_n,
                max_change: positive("options.max_change", o.max_change.unwrap_or(0.1))?,
            })
        }
        ExperimentKind::ContDep => {
            let o: RawContDep = parse_options(&raw.options)?;
            let s = o.s.unwrap_or(2.0);
            if !(s.is_finite() && s > params.critical_s()) {
                return fail(
                    "options.s",
                    format!("s = {s} must exceed the critical regularity {}", params.critical_s()),
                );
            }
            let deltas = non_empty("options.deltas", o.deltas, vec![0.0, 1e-2, 5e-3, 2.5e-3])?;
            if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
                return fail("options.deltas", format!("delta = {d} must be >= 0"));
            }
            ExperimentOptions::ContDep(ContDepOptions {
                s,
                deltas,
                data: gaussian("options.data", o.data)?,
            })
        }
        ExperimentKind::EnergyCheck => {
            let o: RawEnergy = parse_options(&raw.options)?;
            let s = o.s.unwrap_or(2.0);
            if !(s.is_finite() && s >= 0.0) {
                return fail("options.s", format!("s = {s} must be >= 0"));
            }
            ExperimentOptions::EnergyCheck(EnergyOptions {
                s,
                data: gaussian("options.data", o.data)?,
                bound: positive("options.bound", o.bound.unwrap_or(10.0))?,
            })
        }
    };

    let output_dir = if raw.output_dir.is_absolute() {
        raw.output_dir.clone()
    } else {
        base.join(&raw.output_dir)
    };

    Ok(Manifest {
        experiment: kind,
        run_id,
        params,
        grid,
        solver,
        seed: raw.seed,
        output_dir,
        options,
    })
}

fn build_solver(raw: Option<&RawSolver>, kind: ExperimentKind) -> Result<SolverConfig, ManifestError> {
    let d = SolverConfig::default();
    let Some(r) = raw else { return Ok(d) };
    if !kind.uses_solver() {
        return fail("solver", format!("not used by experiment `{}`", kind.name()));
    }
    let cfg = SolverConfig {
        dt: r.dt.unwrap_or(d.dt),
        t_final: r.t_final.unwrap_or(d.t_final),
        dealias: r.dealias.unwrap_or(d.dealias),
        cfl_safety: r.cfl_safety.unwrap_or(d.cfl_safety),
        snapshot_stride: r.snapshot_stride.unwrap_or(d.snapshot_stride),
        nonlinear: r.nonlinear.unwrap_or(d.nonlinear),
        boundary_tolerance: r.boundary_tolerance.unwrap_or(d.boundary_tolerance),
    };
    cfg.validate().or_else(|e| {
        let msg = e.to_string();
        let field = ["dt", "t_final", "dealias", "cfl_safety", "snapshot_stride", "boundary"]
            .iter()
            .find(|f| msg.contains(*f))
            .map(|f| {
                if *f == "boundary" {
                    "solver.boundary_tolerance".to_string()
                } else {
                    format!("solver.{f}")
                }
            })
            .unwrap_or_else(|| "solver".to_string());
        fail(&field, msg)
    })?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Manifest, ManifestError> {
        parse_manifest(text, Path::new("/tmp"), "m")
    }

    #[test]
    fn lengths() {
        assert_eq!(Length::Number(3.0).value().unwrap(), 3.0);
        assert!((Length::Text("64pi".into()).value().unwrap() - 64.0 * PI).abs() < 1e-12);
        assert!((Length::Text("2π".into()).value().unwrap() - 2.0 * PI).abs() < 1e-15);
        assert_eq!(Length::Text("pi".into()).value().unwrap(), PI);
        assert!(Length::Text("64".into()).value().is_err());
        assert!(Length::Text("xpi".into()).value().is_err());
    }

    #[test]
    fn minimal_poisson_manifest() {
        let m = parse(r#"{"experiment":"poisson","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"out"}"#)
            .unwrap();
        assert_eq!(m.run_id, "m");
        assert_eq!(m.output_dir, PathBuf::from("/tmp/out"));
        assert!(m.grid.is_none());
        assert_eq!(
            m.options,
            ExperimentOptions::Poisson(PoissonOptions {
                scales: vec![1.0, 10.0],
                m_max: 200
            })
        );
    }

    #[test]
    fn alpha_below_minus_one_cites_the_hypothesis() {
        let e = parse(r#"{"experiment":"poisson","params":{"alpha":-2,"beta":1,"sign":1},"seed":0,"output_dir":"o"}"#)
            .unwrap_err();
        assert_eq!(e.field, "params.alpha");
        assert!(e.reason.contains("α > −1"));
    }

    #[test]
    fn unknown_fields_are_named() {
        let e = parse(r#"{"experiment":"poisson","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","colour":1}"#)
            .unwrap_err();
        assert!(e.reason.contains("colour"), "{e}");
        let e = parse(r#"{"experiment":"poisson","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","options":{"scale":[1]}}"#)
            .unwrap_err();
        assert!(e.field.starts_with("options"), "{e}");
        assert!(e.reason.contains("scale"), "{e}");
        let e = parse(r#"{"experiment":"poisson","params":{"alpha":1,"beta":1,"sign":2},"seed":0,"output_dir":"o"}"#)
            .unwrap_err();
        assert_eq!(e.field, "params.sign");
    }

    #[test]
    fn grid_rules() {
        let base = r#"{"experiment":"evolve","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o""#;
        let e = parse(&format!("{base}}}")).unwrap_err();
        assert_eq!(e.field, "grid");
        let e = parse(&format!(r#"{base},"grid":{{"nx":100,"ny":8,"lx":"64pi"}}}}"#)).unwrap_err();
        assert_eq!(e.field, "grid.nx");
        let m = parse(&format!(r#"{base},"grid":{{"nx":256,"ny":64,"lx":"64pi"}}}}"#)).unwrap();
        assert_eq!(m.grid().nx(), 256);
    }

    #[test]
    fn solver_fields_are_checked() {
        let base = r#"{"experiment":"evolve","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","grid":{"nx":64,"ny":16,"lx":100}"#;
        let e = parse(&format!(r#"{base},"solver":{{"dt":-1}}}}"#)).unwrap_err();
        assert_eq!(e.field, "solver.dt");
        let m = parse(&format!(r#"{base},"solver":{{"boundary_tolerance":null}}}}"#)).unwrap();
        assert_eq!(m.solver.boundary_tolerance, None);
        let e = parse(
            r#"{"experiment":"vdc","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","solver":{}}"#,
        )
        .unwrap_err();
        assert_eq!(e.field, "solver");
    }

    #[test]
    fn strichartz_cells_are_checked_up_front() {
        let e = parse(
            r#"{"experiment":"strichartz","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","grid":{"nx":256,"ny":8,"lx":"8pi"}}"#,
        )
        .unwrap_err();
        assert_eq!(e.field, "options.j_values");
        assert!(e.reason.contains("required Lx"), "{e}");
    }

    #[test]
    fn cont_dep_needs_supercritical_s() {
        let e = parse(
            r#"{"experiment":"cont_dep","params":{"alpha":1,"beta":1,"sign":1},"seed":0,"output_dir":"o","grid":{"nx":64,"ny":16,"lx":100},"options":{"s":1.0}}"#,
        )
        .unwrap_err();
        assert_eq!(e.field, "options.s");
    }
}
