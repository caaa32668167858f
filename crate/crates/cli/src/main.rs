use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rydeit_cli::config::{parse_config, Mode, RunConfig};
use rydeit_cli::manifest::{manifest_file, Manifest};
use rydeit_cli::presets::{run_preset, Preset};
use rydeit_cli::run::{run_config, run_validation, write_files};
use rydeit_cli::scan::{format_decimal, resolve_workers};
use rydeit_cli::{CliError, Result};
use rydeit_core::spectra::predict_for;

/// Steady-state EIT spectra of a probe atom next to a van der Waals
/// coupled control atom.
#[derive(Parser)]
#[command(name = "rydeit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured scan, or a preset experiment with the configured parameters.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Output directory, overriding `output.dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write SVG figures.
        #[arg(long)]
        plot: bool,
        /// Worker threads; defaults to `workers` in the config, then RYDEIT_WORKERS, then all cores.
        #[arg(long)]
        workers: Option<usize>,
        /// Treat a dispersive-regime violation as an error.
        #[arg(long)]
        strict: bool,
    },
    /// Compare the full four-level pair with the effective model; prints a JSON report.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Print predicted line positions as CSV.
    Predict {
        #[arg(long)]
        config: PathBuf,
        /// Interaction energy in MHz, overriding the config.
        #[arg(long)]
        v: Option<f64>,
        #[arg(long)]
        strict: bool,
    },
}

fn load(path: &Path, strict: bool) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let (cfg, warnings) = parse_config(&text, strict)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn run(
    config: &Path,
    preset: Option<Preset>,
    out: Option<PathBuf>,
    plot: bool,
    workers: Option<usize>,
    strict: bool,
) -> Result<()> {
    if workers == Some(0) {
        return Err(CliError::schema("--workers", "must be at least 1"));
    }
    let cfg = load(config, strict)?;
    let workers = resolve_workers(workers, cfg.workers);
    let plot = plot || cfg.output.plot;
    let started = Instant::now();
    let output = match preset {
        Some(p) => run_preset(p, &cfg.raw, workers, plot)?,
        None => run_config(&cfg, workers, plot)?,
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let manifest = Manifest::new(command, &cfg, &output, started.elapsed().as_secs_f64()).to_json();

    let mut files: Vec<(String, &str)> = output.artifacts.iter().map(|a| (a.file.clone(), a.contents.as_str())).collect();
    files.push((manifest_file(&output.name), &manifest));
    let dir = out.unwrap_or_else(|| cfg.output.dir.clone());
    for path in write_files(&dir, &files)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn validate(config: &Path, strict: bool) -> Result<()> {
    let cfg = load(config, strict)?;
    let settings = cfg.validate.as_ref().ok_or_else(|| CliError::schema("validate", "required by the validate command"))?;
    let report = run_validation(&cfg.raw, settings)?;
    println!("{}", serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?);
    Ok(())
}

fn predict(config: &Path, v: Option<f64>, strict: bool) -> Result<()> {
    let cfg = load(config, strict)?;
    let v = v.unwrap_or_else(|| cfg.raw.v());
    let pred = predict_for(&cfg.raw, v)?;
    let lines = if cfg.mode == Mode::SingleAtom {
        let mut l = pred.at_doublet.to_vec();
        l.extend(pred.all_lines().pop());
        l
    } else {
        pred.all_lines()
    };
    let mut text = String::from("label,delta_p_mhz\n");
    for l in lines {
        text.push_str(&format!("{},{}\n", l.label, format_decimal(l.detuning)));
    }
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, preset, out, plot, workers, strict } => run(&config, preset, out, plot, workers, strict),
        Command::Validate { config, strict } => validate(&config, strict),
        Command::Predict { config, v, strict } => predict(&config, v, strict),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
