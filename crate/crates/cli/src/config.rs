//! Run configuration.
//!
//! Configs are TOML documents. Frequencies are cyclic MHz (the `X` of a
//! quoted `X/2π`), times are µs. Every key is optional; an empty document
//! reproduces the reference parameter set. The schema is documented in
//! `docs/config.md`.

use std::path::PathBuf;

use rydeit_core::model::{Interaction, RawParams, DISPERSIVE_RATIO_LIMIT};
use rydeit_core::numerics::C64;
use rydeit_core::spectra::Grid;
use rydeit_core::validator::{DEFAULT_GAP_TOL, DEFAULT_SAMPLES, DEFAULT_T_END};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    SingleAtom,
    #[default]
    TwoAtom,
    Validate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// File stem of the scan outputs.
    pub name: String,
    pub plot: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateConfig {
    pub delta_p: f64,
    pub v: f64,
    pub t_end: f64,
    pub samples: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub raw: RawParams,
    pub scan: Grid,
    /// Interaction values to scan; empty means the single value in `raw`.
    pub sweep: Vec<f64>,
    pub output: OutputConfig,
    pub workers: Option<usize>,
    pub validate: Option<ValidateConfig>,
}

impl RunConfig {
    pub fn v_values(&self) -> Vec<f64> {
        if self.sweep.is_empty() {
            vec![self.raw.v()]
        } else {
            self.sweep.clone()
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        parse_config("", false).expect("empty document is valid").0
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    mode: Mode,
    workers: Option<usize>,
    #[serde(default)]
    params: ParamsDoc,
    #[serde(default)]
    scan: ScanDoc,
    sweep: Option<SweepDoc>,
    #[serde(default)]
    output: OutputDoc,
    validate: Option<ValidateDoc>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    omega_p: Option<f64>,
    omega_p1: Option<f64>,
    omega_p2: Option<f64>,
    omega_c: Option<f64>,
    omega_c1: Option<f64>,
    omega_c2: Option<f64>,
    delta_p2: Option<f64>,
    delta_c1: Option<f64>,
    delta_c2: Option<f64>,
    gamma_ec: Option<f64>,
    gamma_ep: Option<f64>,
    gamma_r: Option<f64>,
    v: Option<f64>,
    c6: Option<f64>,
    r_sep: Option<f64>,
    coupling_on_control: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanDoc {
    delta_p_min: f64,
    delta_p_max: f64,
    step: f64,
}

impl Default for ScanDoc {
    fn default() -> Self {
        Self { delta_p_min: -2.0, delta_p_max: 2.0, step: 0.005 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepDoc {
    v_min: Option<f64>,
    v_max: Option<f64>,
    step: Option<f64>,
    values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputDoc {
    #[serde(default = "default_dir")]
    dir: PathBuf,
    #[serde(default = "default_name")]
    name: String,
    #[serde(default)]
    plot: bool,
}

impl Default for OutputDoc {
    fn default() -> Self {
        Self { dir: default_dir(), name: default_name(), plot: false }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_name() -> String {
    "scan".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValidateDoc {
    delta_p: f64,
    v: Option<f64>,
    t_end: Option<f64>,
    samples: Option<usize>,
    tolerance: Option<f64>,
}

/// Parses and validates a config document.
///
/// Returns the config and any physics warnings. With `strict`, a
/// dispersive-regime violation is an error instead of a warning.
pub fn parse_config(text: &str, strict: bool) -> Result<(RunConfig, Vec<String>)> {
    let de = toml::Deserializer::parse(text).map_err(|e| CliError::schema("<document>", e.message()))?;
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::schema(if path == "." { "<document>".to_string() } else { path }, e.into_inner().message())
    })?;
    build(doc, strict)
}

fn positive(path: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::schema(path, format!("must be positive, got {x}")))
    }
}

fn pick(path: &str, shared: Option<f64>, own: Option<f64>, default: f64) -> Result<f64> {
    match (shared, own) {
        (Some(_), Some(_)) => Err(CliError::schema(path, "given together with the shared value")),
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => Ok(default),
    }
}

fn build_params(p: &ParamsDoc, mode: Mode) -> Result<RawParams> {
    let d = RawParams::default();
    let real = |x: f64| C64::new(x, 0.0);
    let interaction = match (p.v, p.c6, p.r_sep) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(CliError::schema("params.v", "give either v or c6 with r_sep, not both"));
        }
        (Some(v), None, None) => Interaction::Energy(v),
        (None, Some(c6), Some(r_sep)) => Interaction::VanDerWaals { c6, r_sep: positive("params.r_sep", r_sep)? },
        (None, Some(_), None) => return Err(CliError::schema("params.r_sep", "required with c6")),
        (None, None, Some(_)) => return Err(CliError::schema("params.c6", "required with r_sep")),
        (None, None, None) => d.interaction,
    };
    let coupling_on_control = match (mode, p.coupling_on_control) {
        (Mode::SingleAtom, Some(true)) => {
            return Err(CliError::schema("params.coupling_on_control", "must be false in single_atom mode"));
        }
        (Mode::SingleAtom, _) => false,
        (_, Some(c)) => c,
        (_, None) => d.coupling_on_control,
    };
    let raw = RawParams {
        omega_p1: real(pick("params.omega_p1", p.omega_p, p.omega_p1, d.omega_p1.re)?),
        omega_p2: real(pick("params.omega_p2", p.omega_p, p.omega_p2, d.omega_p2.re)?),
        omega_c1: real(pick("params.omega_c1", p.omega_c, p.omega_c1, d.omega_c1.re)?),
        omega_c2: real(pick("params.omega_c2", p.omega_c, p.omega_c2, d.omega_c2.re)?),
        delta_p2: p.delta_p2.unwrap_or(d.delta_p2),
        delta_c1: p.delta_c1.unwrap_or(d.delta_c1),
        delta_c2: p.delta_c2.unwrap_or(d.delta_c2),
        gamma_ec: p.gamma_ec.unwrap_or(d.gamma_ec),
        gamma_ep: p.gamma_ep.unwrap_or(d.gamma_ep),
        gamma_r: p.gamma_r.unwrap_or(d.gamma_r),
        interaction,
        coupling_on_control,
    };
    raw.validate()?;
    Ok(raw)
}

fn build_sweep(s: &SweepDoc) -> Result<Vec<f64>> {
    match (s.values.as_ref(), s.v_min, s.v_max, s.step) {
        (Some(values), None, None, None) => {
            if values.is_empty() {
                return Err(CliError::schema("sweep.values", "must not be empty"));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(CliError::schema("sweep.values", "must be finite"));
            }
            Ok(values.clone())
        }
        (None, Some(lo), Some(hi), Some(step)) => {
            positive("sweep.step", step)?;
            let grid = Grid::new(lo, hi, step).map_err(|_| CliError::schema("sweep", "need v_min <= v_max"))?;
            Ok(grid.points())
        }
        (Some(_), ..) => Err(CliError::schema("sweep.values", "give either values or v_min/v_max/step")),
        (None, lo, hi, _) => {
            let missing = if lo.is_none() {
                "sweep.v_min"
            } else if hi.is_none() {
                "sweep.v_max"
            } else {
                "sweep.step"
            };
            Err(CliError::schema(missing, "missing"))
        }
    }
}

fn build(doc: Document, strict: bool) -> Result<(RunConfig, Vec<String>)> {
    let raw = build_params(&doc.params, doc.mode)?;
    let step = positive("scan.step", doc.scan.step)?;
    let scan = Grid::new(doc.scan.delta_p_min, doc.scan.delta_p_max, step)
        .map_err(|_| CliError::schema("scan", "need finite delta_p_min <= delta_p_max"))?;
    let sweep = match &doc.sweep {
        Some(s) => {
            if doc.params.v.is_some() || doc.params.c6.is_some() {
                return Err(CliError::schema("sweep", "conflicts with a fixed interaction in params"));
            }
            build_sweep(s)?
        }
        None => Vec::new(),
    };
    if doc.workers == Some(0) {
        return Err(CliError::schema("workers", "must be at least 1"));
    }
    if doc.output.name.is_empty() || doc.output.name.contains(['/', '\\']) {
        return Err(CliError::schema("output.name", "must be a plain file stem"));
    }
    let validate = match doc.validate {
        Some(v) => Some(ValidateConfig {
            delta_p: v.delta_p,
            v: v.v.unwrap_or(raw.v()),
            t_end: positive("validate.t_end", v.t_end.unwrap_or(DEFAULT_T_END))?,
            samples: match v.samples.unwrap_or(DEFAULT_SAMPLES) {
                0 => return Err(CliError::schema("validate.samples", "must be at least 1")),
                n => n,
            },
            tolerance: positive("validate.tolerance", v.tolerance.unwrap_or(DEFAULT_GAP_TOL))?,
        }),
        None if doc.mode == Mode::Validate => {
            return Err(CliError::schema("validate", "required in validate mode"));
        }
        None => None,
    };

    let mut warnings = Vec::new();
    let ratio = raw.dispersive_ratio();
    if ratio >= DISPERSIVE_RATIO_LIMIT {
        let msg = format!(
            "largest |Omega/Delta| is {ratio:.3}, outside the dispersive regime (< {DISPERSIVE_RATIO_LIMIT})"
        );
        if strict {
            return Err(CliError::Physics(msg));
        }
        warnings.push(msg);
    }

    let config = RunConfig {
        mode: doc.mode,
        raw,
        scan,
        sweep,
        output: OutputConfig { dir: doc.output.dir, name: doc.output.name, plot: doc.output.plot },
        workers: doc.workers,
        validate,
    };
    Ok((config, warnings))
}
