//! Preset experiments reproducing the reference figures.
//!
//! Presets take the physical parameters from the config and fix the grids,
//! interaction values and the swept quantity.

use clap::ValueEnum;
use rydeit_core::model::RawParams;
use rydeit_core::spectra::Grid;

use crate::error::Result;
use crate::run::{markers, row_series, spectrum_plot, tag, table_figure, Artifact, RunOutput};
use crate::scan::{run_jobs, ScanJob, ScanTable};
use crate::svg::Series;

/// Probe Rabi frequencies of the single-atom spectra. The reference only
/// says "increasing"; these values are an assumption.
pub const FIG1C_PROBES: [f64; 3] = [0.2, 0.5, 1.0];
pub const FIG3_V: (f64, f64, f64) = (0.0, 2.0, 0.05);
pub const FIG3_LINECUTS: [f64; 4] = [0.2, 0.5, 1.0, 1.5];
pub const FIG4_GAMMA_R: [f64; 3] = [0.01, 0.05, 0.1];
pub const FIG4_V: [f64; 2] = [1.1, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1c,
    Fig3,
    Fig4,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1c => "fig1c",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    /// Probe-detuning grid of the preset.
    pub fn grid(self) -> Grid {
        let g = match self {
            Preset::Fig1c | Preset::Fig3 => Grid::new(-2.0, 2.0, 0.005),
            // The outermost lines at V = 4 sit near -4.9.
            Preset::Fig4 => Grid::new(-5.5, 1.5, 0.005),
        };
        g.expect("preset grids are valid")
    }

    /// Tables computed by the preset, before any linecuts.
    pub fn jobs(self, raw: &RawParams) -> Vec<ScanJob> {
        let grid = self.grid();
        match self {
            Preset::Fig1c => FIG1C_PROBES
                .iter()
                .map(|&p| ScanJob {
                    file: format!("fig1c_omega_p{}.csv", tag(p)),
                    raw: RawParams { coupling_on_control: false, ..raw.clone().with_probe(p).with_v(0.0) },
                    grid,
                    v_values: vec![0.0],
                })
                .collect(),
            Preset::Fig3 => {
                let (lo, hi, step) = FIG3_V;
                let v_values = Grid::new(lo, hi, step).expect("valid sweep").points();
                vec![ScanJob { file: "fig3.csv".into(), raw: raw.clone(), grid, v_values }]
            }
            Preset::Fig4 => FIG4_GAMMA_R
                .iter()
                .map(|&g| ScanJob {
                    file: format!("fig4_gamma{}.csv", tag(g)),
                    raw: raw.clone().with_gamma_r(g),
                    grid,
                    v_values: FIG4_V.to_vec(),
                })
                .collect(),
        }
    }
}

pub fn run_preset(preset: Preset, raw: &RawParams, workers: usize, plot: bool) -> Result<RunOutput> {
    let mut jobs = preset.jobs(raw);
    let tables = run_jobs(&jobs, workers)?;
    let mut artifacts: Vec<Artifact> = tables.iter().map(Artifact::table).collect();

    match preset {
        Preset::Fig1c => {
            if plot {
                let series =
                    tables.iter().zip(FIG1C_PROBES).map(|(t, p)| row_series(t, 0, format!("Omega_p = {}", tag(p))));
                let svg = spectrum_plot(
                    "fig1c: single atom".into(),
                    series.collect(),
                    markers(&tables[2].job.raw, 0.0)?,
                )?;
                let sources = tables.iter().map(|t| t.job.file.clone()).collect();
                artifacts.push(Artifact::figure("fig1c.svg", svg, sources));
            }
        }
        Preset::Fig3 => {
            let map = &tables[0];
            if plot {
                artifacts.push(table_figure(map, "fig3")?);
            }
            for v in FIG3_LINECUTS {
                let stem = format!("fig3_v{}", tag(v));
                let cut: ScanTable = map.linecut(v, format!("{stem}.csv"));
                artifacts.push(Artifact::table(&cut));
                if plot {
                    artifacts.push(table_figure(&cut, &stem)?);
                }
                jobs.push(cut.job);
            }
        }
        Preset::Fig4 => {
            if plot {
                for (row, v) in FIG4_V.iter().enumerate() {
                    let series: Vec<Series> = tables
                        .iter()
                        .zip(FIG4_GAMMA_R)
                        .map(|(t, g)| row_series(t, row, format!("gamma_r = {}", tag(g))))
                        .collect();
                    let title = format!("fig4: V = {} MHz", tag(*v));
                    let svg = spectrum_plot(title, series, markers(raw, *v)?)?;
                    let sources = tables.iter().map(|t| t.job.file.clone()).collect();
                    artifacts.push(Artifact::figure(format!("fig4_v{}.svg", tag(*v)), svg, sources));
                }
            }
        }
    }
    Ok(RunOutput { name: preset.name().into(), preset: Some(preset.name().into()), jobs, artifacts, workers })
}
