use serde::Serialize;

use super::peaks::Peak;
use super::predict::Line;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineMatch {
    pub label: String,
    pub predicted: f64,
    /// Index into the found peaks.
    pub peak: Option<usize>,
    /// `found - predicted` when matched.
    pub residual: Option<f64>,
    /// The matched peak also accounts for another nearby line.
    pub merged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub lines: Vec<LineMatch>,
    pub unmatched_lines: usize,
    pub unmatched_peaks: usize,
}

impl MatchReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched_lines == 0
    }

    pub fn max_residual(&self) -> Option<f64> {
        self.lines.iter().filter_map(|l| l.residual.map(f64::abs)).reduce(f64::max)
    }
}

/// Greedy nearest matching of predicted lines to found peaks within `tol`.
///
/// A peak normally takes one line. Lines closer than `merge_width` to every
/// line already assigned to a peak may share it, since the simulation
/// cannot resolve them.
pub fn reconcile(predicted: &[Line], found: &[Peak], tol: f64, merge_width: f64) -> MatchReport {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, line) in predicted.iter().enumerate() {
        for (k, peak) in found.iter().enumerate() {
            let d = (peak.detuning - line.detuning).abs();
            if d <= tol {
                pairs.push((d, i, k));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut line_peak: Vec<Option<usize>> = vec![None; predicted.len()];
    let mut peak_lines: Vec<Vec<usize>> = vec![Vec::new(); found.len()];
    for (_, i, k) in pairs {
        if line_peak[i].is_some() {
            continue;
        }
        let shareable = peak_lines[k]
            .iter()
            .all(|&other| (predicted[other].detuning - predicted[i].detuning).abs() < merge_width);
        if shareable {
            line_peak[i] = Some(k);
            peak_lines[k].push(i);
        }
    }

    let lines: Vec<LineMatch> = predicted
        .iter()
        .zip(&line_peak)
        .map(|(line, &peak)| LineMatch {
            label: line.label.clone(),
            predicted: line.detuning,
            peak,
            residual: peak.map(|k| found[k].detuning - line.detuning),
            merged: peak.is_some_and(|k| peak_lines[k].len() > 1),
        })
        .collect();
    MatchReport {
        unmatched_lines: line_peak.iter().filter(|p| p.is_none()).count(),
        unmatched_peaks: peak_lines.iter().filter(|l| l.is_empty()).count(),
        lines,
    }
}
