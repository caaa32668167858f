//! Config ingestion, preset experiments, parallel scans and CSV/SVG output for the `rydeit` command.

pub mod config;
pub mod error;
pub mod manifest;
pub mod presets;
pub mod run;
pub mod scan;
pub mod svg;

pub use error::{CliError, Result};
