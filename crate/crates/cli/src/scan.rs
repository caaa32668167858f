//! Parallel spectrum scans and their CSV form.

use rayon::prelude::*;
use rydeit_core::model::RawParams;
use rydeit_core::spectra::{steady_population, Grid, Spectrum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "delta_p_mhz,v_mhz,rydberg_population";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Environment variable giving the default worker count.
pub const WORKERS_ENV: &str = "RYDEIT_WORKERS";

/// One output table: a detuning grid scanned at each interaction value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanJob {
    pub file: String,
    pub raw: RawParams,
    pub grid: Grid,
    pub v_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub job: ScanJob,
    pub detunings: Vec<f64>,
    /// One row of populations per interaction value.
    pub populations: Vec<Vec<f64>>,
}

impl ScanTable {
    pub fn spectrum(&self, row: usize) -> Result<Spectrum> {
        let v = self.job.v_values[row];
        let tag = self.job.raw.clone().with_v(v).fingerprint();
        Ok(Spectrum::new(self.detunings.clone(), self.populations[row].clone(), tag, v)?)
    }

    /// Single-row table for the interaction value closest to `v`.
    pub fn linecut(&self, v: f64, file: impl Into<String>) -> ScanTable {
        let row = (0..self.job.v_values.len())
            .min_by(|&a, &b| (self.job.v_values[a] - v).abs().total_cmp(&(self.job.v_values[b] - v).abs()))
            .expect("tables have at least one row");
        ScanTable {
            job: ScanJob { file: file.into(), v_values: vec![self.job.v_values[row]], ..self.job.clone() },
            detunings: self.detunings.clone(),
            populations: vec![self.populations[row].clone()],
        }
    }

    /// CSV text, rows ordered by interaction value as given, then detuning.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(48 * self.detunings.len() * self.populations.len() + 64);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (v, row) in self.job.v_values.iter().zip(&self.populations) {
            let v = format_decimal(*v);
            for (d, p) in self.detunings.iter().zip(row) {
                out.push_str(&format_decimal(*d));
                out.push(',');
                out.push_str(&v);
                out.push(',');
                out.push_str(&format_decimal(*p));
                out.push('\n');
            }
        }
        out
    }
}

/// `x` in plain decimal notation with twelve significant digits.
pub fn format_decimal(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    let digits = SIGNIFICANT_DIGITS as i32;
    let mut exponent = x.abs().log10().floor() as i32;
    let mut text = format!("{:.*}", (digits - 1 - exponent).max(0) as usize, x);
    // Rounding can carry into a new leading digit, e.g. 9.9999999999996.
    let lead = text.trim_start_matches('-').split('.').next().unwrap_or("");
    let integer_digits = if lead == "0" { 0 } else { lead.len() as i32 };
    if integer_digits > exponent + 1 && integer_digits > 0 {
        exponent += 1;
        text = format!("{:.*}", (digits - 1 - exponent).max(0) as usize, x);
    }
    text
}

/// Worker count: the flag, else the config, else the environment, else the
/// number of available cores.
pub fn resolve_workers(flag: Option<usize>, config: Option<usize>) -> usize {
    flag.or(config)
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|s| s.trim().parse().ok()))
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every `(job, v, detuning)` point on a pool of `workers` threads.
///
/// Each point is an independent steady-state solve written to its own slot,
/// so the tables are bit-identical for any worker count. On failure the
/// error of the lowest-indexed failing point is returned.
pub fn run_jobs(jobs: &[ScanJob], workers: usize) -> Result<Vec<ScanTable>> {
    let grids: Vec<Vec<f64>> = jobs.iter().map(|j| j.grid.points()).collect();
    let mut tasks: Vec<(usize, f64, f64)> = Vec::new();
    for (j, job) in jobs.iter().enumerate() {
        for &v in &job.v_values {
            tasks.extend(grids[j].iter().map(|&d| (j, v, d)));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot start {workers} workers: {e}")))?;
    let results: Vec<rydeit_core::Result<f64>> =
        pool.install(|| tasks.par_iter().map(|&(j, v, d)| steady_population(&jobs[j].raw, d, v)).collect());

    let mut values = results.into_iter();
    let mut tables = Vec::with_capacity(jobs.len());
    for (job, detunings) in jobs.iter().zip(grids) {
        let mut populations = Vec::with_capacity(job.v_values.len());
        for _ in &job.v_values {
            let row = values.by_ref().take(detunings.len()).collect::<rydeit_core::Result<Vec<f64>>>()?;
            populations.push(row);
        }
        tables.push(ScanTable { job: job.clone(), detunings, populations });
    }
    Ok(tables)
}
