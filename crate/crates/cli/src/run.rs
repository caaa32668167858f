//! Scan runs, their figures, and writing the results to disk.

use std::fs;
use std::path::{Path, PathBuf};

use rydeit_core::model::RawParams;
use rydeit_core::spectra::predict_for;
use rydeit_core::validator::{compare_models_with, ValidationReport};

use crate::config::{Mode, RunConfig, ValidateConfig};
use crate::error::{CliError, Result};
use crate::scan::{run_jobs, ScanJob, ScanTable};
use crate::svg::{render_heatmap, render_lines, HeatMap, LinePlot, Marker, Series};

pub const X_LABEL: &str = "probe detuning delta_p (MHz)";
pub const POPULATION_LABEL: &str = "Rydberg population";

/// A file produced by a run, held in memory until every step succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file: String,
    pub contents: String,
    /// Tables a figure was drawn from; empty for tables themselves.
    pub sources: Vec<String>,
}

impl Artifact {
    pub fn table(table: &ScanTable) -> Self {
        Artifact { file: table.job.file.clone(), contents: table.to_csv(), sources: Vec::new() }
    }

    pub fn figure(file: impl Into<String>, svg: String, sources: Vec<String>) -> Self {
        Artifact { file: file.into(), contents: svg, sources }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// File stem of the run, also used for the manifest.
    pub name: String,
    pub preset: Option<String>,
    pub jobs: Vec<ScanJob>,
    pub artifacts: Vec<Artifact>,
    pub workers: usize,
}

/// Compact number for file names: `0.2`, `1`, `1.5`.
pub fn tag(x: f64) -> String {
    format!("{x}")
}

/// Predicted line positions for a spectrum plot: all eleven lines for the
/// pair, the doublet and centre for a lone probe atom.
pub fn markers(raw: &RawParams, v: f64) -> Result<Vec<Marker>> {
    let pred = predict_for(raw, v)?;
    let lines = if raw.coupling_on_control {
        pred.all_lines()
    } else {
        let mut l = pred.at_doublet.to_vec();
        l.push(pred.all_lines().pop().expect("centre is last"));
        l
    };
    Ok(lines.into_iter().map(|l| Marker { label: l.label, x: l.detuning }).collect())
}

pub fn spectrum_plot(title: String, series: Vec<Series>, markers: Vec<Marker>) -> Result<String> {
    render_lines(&LinePlot {
        title,
        x_label: X_LABEL.into(),
        y_label: POPULATION_LABEL.into(),
        series,
        markers,
    })
}

pub fn row_series(table: &ScanTable, row: usize, label: String) -> Series {
    Series { label, x: table.detunings.clone(), y: table.populations[row].clone() }
}

/// Figure for one table: a spectrum with predicted markers when it has a
/// single interaction value, a heat map over `(delta_p, v)` otherwise.
pub fn table_figure(table: &ScanTable, stem: &str) -> Result<Artifact> {
    let file = format!("{stem}.svg");
    let sources = vec![table.job.file.clone()];
    let svg = if table.job.v_values.len() == 1 {
        let v = table.job.v_values[0];
        let title = format!("{stem}: V = {} MHz", tag(v));
        spectrum_plot(title, vec![row_series(table, 0, format!("V = {}", tag(v)))], markers(&table.job.raw, v)?)?
    } else {
        render_heatmap(&HeatMap {
            title: format!("{stem}: {POPULATION_LABEL}"),
            x_label: X_LABEL.into(),
            y_label: "interaction V (MHz)".into(),
            x: table.detunings.clone(),
            y: table.job.v_values.clone(),
            values: table.populations.clone(),
        })?
    };
    Ok(Artifact::figure(file, svg, sources))
}

/// The scan described by `cfg`: one table `<name>.csv`, plus its figure
/// when `plot` is set.
pub fn run_scan(cfg: &RunConfig, workers: usize, plot: bool) -> Result<RunOutput> {
    let name = cfg.output.name.clone();
    let job = ScanJob { file: format!("{name}.csv"), raw: cfg.raw.clone(), grid: cfg.scan, v_values: cfg.v_values() };
    let tables = run_jobs(std::slice::from_ref(&job), workers)?;
    let mut artifacts = vec![Artifact::table(&tables[0])];
    if plot {
        artifacts.push(table_figure(&tables[0], &name)?);
    }
    Ok(RunOutput { name, preset: None, jobs: vec![job], artifacts, workers })
}

/// Full-model comparison requested by a `[validate]` section.
pub fn run_validation(raw: &RawParams, v: &ValidateConfig) -> Result<ValidationReport> {
    Ok(compare_models_with(raw, v.delta_p, v.v, v.t_end, v.samples, v.tolerance)?)
}

/// Dispatches on the config mode; validate mode yields
/// `<name>_validation.json` instead of a scan.
pub fn run_config(cfg: &RunConfig, workers: usize, plot: bool) -> Result<RunOutput> {
    if cfg.mode != Mode::Validate {
        return run_scan(cfg, workers, plot);
    }
    let settings = cfg.validate.as_ref().ok_or_else(|| CliError::schema("validate", "required in validate mode"))?;
    let report = run_validation(&cfg.raw, settings)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
    let name = cfg.output.name.clone();
    Ok(RunOutput {
        artifacts: vec![Artifact { file: format!("{name}_validation.json"), contents: json + "\n", sources: Vec::new() }],
        name,
        preset: None,
        jobs: Vec::new(),
        workers,
    })
}

/// Writes `files` under `dir`, creating it if needed. If any write fails
/// the files already written by this call are removed again.
pub fn write_files(dir: &Path, files: &[(String, &str)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut written: Vec<PathBuf> = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = dir.join(name);
        if let Err(source) = fs::write(&path, contents) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(CliError::Io { path, source });
        }
        written.push(path);
    }
    Ok(written)
}
