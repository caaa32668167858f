use serde::Serialize;

use super::scan::{check_uniform, Spectrum};
use crate::error::{Error, Result};

pub const DEFAULT_PROMINENCE_FRACTION: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    /// Refined position.
    pub detuning: f64,
    /// Refined height.
    pub height: f64,
    /// Grid index of the sampled maximum.
    pub index: usize,
    pub prominence: f64,
}

/// Local maxima whose prominence is at least `prominence_fraction` of the
/// global maximum, refined by a parabola through the three samples around
/// each maximum. Sorted by detuning.
pub fn find_peaks(spec: &Spectrum, prominence_fraction: f64) -> Result<Vec<Peak>> {
    if spec.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    check_uniform(&spec.detunings)?;
    let y = &spec.populations;
    let x = &spec.detunings;
    let n = y.len();
    let global = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = prominence_fraction * global;

    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if !(y[i] > y[i - 1]) {
            i += 1;
            continue;
        }
        // Walk across a flat top to its right edge.
        let mut j = i;
        while j + 1 < n && y[j + 1] == y[i] {
            j += 1;
        }
        if j + 1 < n && y[j + 1] < y[i] {
            let centre = (i + j) / 2;
            let prominence = prominence_at(y, i, j);
            if prominence >= threshold && prominence > 0.0 {
                let (detuning, height) = if i == j {
                    refine(x, y, i)
                } else {
                    (0.5 * (x[i] + x[j]), y[i])
                };
                peaks.push(Peak { detuning, height, index: centre, prominence });
            }
        }
        i = j + 1;
    }
    Ok(peaks)
}

/// Height above the higher of the two minima separating the plateau
/// `[lo, hi]` from higher ground (or the spectrum edge) on either side.
fn prominence_at(y: &[f64], lo: usize, hi: usize) -> f64 {
    let top = y[lo];
    let mut left_min = top;
    for k in (0..lo).rev() {
        if y[k] > top {
            break;
        }
        left_min = left_min.min(y[k]);
    }
    let mut right_min = top;
    for &v in &y[hi + 1..] {
        if v > top {
            break;
        }
        right_min = right_min.min(v);
    }
    top - left_min.max(right_min)
}

/// Vertex of the parabola through samples `i - 1, i, i + 1`.
fn refine(x: &[f64], y: &[f64], i: usize) -> (f64, f64) {
    let a = 0.5 * (y[i - 1] - 2.0 * y[i] + y[i + 1]);
    let b = 0.5 * (y[i + 1] - y[i - 1]);
    if a == 0.0 {
        return (x[i], y[i]);
    }
    let p = (-b / (2.0 * a)).clamp(-1.0, 1.0);
    let step = x[i + 1] - x[i];
    (x[i] + p * step, y[i] + b * p + a * p * p)
}

/// Refined minimum of the spectrum among samples within `half_window` of
/// `centre`.
pub fn local_minimum(spec: &Spectrum, centre: f64, half_window: f64) -> Result<(f64, f64)> {
    let idx: Vec<usize> = (0..spec.len()).filter(|&i| (spec.detunings[i] - centre).abs() <= half_window).collect();
    let &first = idx.first().ok_or(Error::EmptySpectrum)?;
    let best = idx.iter().copied().fold(first, |b, i| if spec.populations[i] < spec.populations[b] { i } else { b });
    if best == 0 || best + 1 >= spec.len() {
        return Ok((spec.detunings[best], spec.populations[best]));
    }
    let y = &spec.populations;
    let a = 0.5 * (y[best - 1] - 2.0 * y[best] + y[best + 1]);
    let b = 0.5 * (y[best + 1] - y[best - 1]);
    if a <= 0.0 {
        return Ok((spec.detunings[best], y[best]));
    }
    let p = (-b / (2.0 * a)).clamp(-1.0, 1.0);
    let step = spec.detunings[best + 1] - spec.detunings[best];
    Ok((spec.detunings[best] + p * step, y[best] + b * p + a * p * p))
}

/// Full width at half maximum of the peak sampled at `index`, with linear
/// interpolation of the half-height crossings. `None` if either flank does
/// not fall to half height before the edge of the spectrum or a higher
/// neighbouring peak.
pub fn fwhm(spec: &Spectrum, index: usize) -> Option<f64> {
    let y = &spec.populations;
    let x = &spec.detunings;
    let half = 0.5 * y[index];
    let mut left = None;
    for k in (0..index).rev() {
        if y[k] > y[index] {
            break;
        }
        if y[k] <= half {
            let t = (half - y[k]) / (y[k + 1] - y[k]);
            left = Some(x[k] + t * (x[k + 1] - x[k]));
            break;
        }
    }
    let mut right = None;
    for k in index + 1..y.len() {
        if y[k] > y[index] {
            break;
        }
        if y[k] <= half {
            let t = (y[k - 1] - half) / (y[k - 1] - y[k]);
            right = Some(x[k - 1] + t * (x[k] - x[k - 1]));
            break;
        }
    }
    Some(right? - left?)
}
