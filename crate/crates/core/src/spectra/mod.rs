//! Dressed-state predictions, simulated spectra and their comparison.

mod dressed;
mod peaks;
mod predict;
mod reconcile;
mod scan;

pub use dressed::{dressed_pair, dressed_single, DressedPair, DressedSingle};
pub use peaks::{find_peaks, fwhm, local_minimum, Peak, DEFAULT_PROMINENCE_FRACTION};
pub use predict::{predict_for, predict_peaks, resolve_orientation, susceptibility_im, Line, PeakPrediction, SignOrientation};
pub use reconcile::{reconcile, LineMatch, MatchReport};
pub use scan::{check_uniform, scan_spectrum, snap, steady_population, Grid, Spectrum};
