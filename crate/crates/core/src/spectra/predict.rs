//! Closed-form line positions from the dressed-state picture.

use serde::Serialize;

use super::dressed::{dressed_pair, dressed_single};
use super::peaks::{find_peaks, DEFAULT_PROMINENCE_FRACTION};
use super::scan::{scan_spectrum, Grid};
use crate::error::{Error, Result};
use crate::model::{derive_effective_params, EffectiveParams, RawParams};

/// Which way the dressed energies are laid out about the Stark offset on
/// the probe-detuning axis: a line of dressed energy `E` sits at
/// `E_ss + sign * E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignOrientation {
    Positive,
    Negative,
}

impl SignOrientation {
    pub fn sign(self) -> f64 {
        match self {
            SignOrientation::Positive => 1.0,
            SignOrientation::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Line {
    pub label: String,
    pub detuning: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakPrediction {
    /// Single-atom Autler-Townes doublet, `+` then `-`.
    pub at_doublet: [Line; 2],
    /// Pair lines, `+1..+4` then `-1..-4`, index `j` running over the
    /// ascending dressed pair energies.
    pub eight_lines: Vec<Line>,
    pub eit_center: f64,
    pub sign_orientation: SignOrientation,
}

impl PeakPrediction {
    /// Doublet, pair lines and centre, eleven entries.
    pub fn all_lines(&self) -> Vec<Line> {
        let mut out: Vec<Line> = self.at_doublet.to_vec();
        out.extend(self.eight_lines.iter().cloned());
        out.push(Line { label: "eit_center".into(), detuning: self.eit_center });
        out
    }
}

/// Line positions for the dressed energies of `eff` (evaluated at zero
/// probe detuning by convention) and interaction `v`.
pub fn predict_peaks(eff: &EffectiveParams, v: f64, orientation: SignOrientation) -> Result<PeakPrediction> {
    let s = orientation.sign();
    let single = dressed_single(eff);
    let pair = dressed_pair(eff, v)?;
    let at = |label: &str, e: f64| Line { label: label.into(), detuning: eff.e_ss + s * e };
    let at_doublet = [at("at+", single.e_plus), at("at-", single.e_minus)];
    let mut eight_lines = Vec::with_capacity(8);
    for (sign, e_dressed) in [("+", single.e_plus), ("-", single.e_minus)] {
        for (j, e_j) in pair.energies.iter().enumerate() {
            eight_lines.push(at(&format!("{sign}{}", j + 1), e_j - e_dressed));
        }
    }
    Ok(PeakPrediction {
        at_doublet,
        eight_lines,
        eit_center: eff.e_ss + s * 0.5 * (single.e_plus + single.e_minus),
        sign_orientation: orientation,
    })
}

/// Weak-probe prediction for `raw` with the orientation resolved against a
/// simulated single-atom spectrum.
pub fn predict_for(raw: &RawParams, v: f64) -> Result<PeakPrediction> {
    let eff = derive_effective_params(raw, 0.0)?;
    predict_peaks(&eff, v, resolve_orientation(raw)?)
}

/// Picks the orientation whose doublet lies closer to the peaks of the
/// simulated single-atom spectrum.
pub fn resolve_orientation(raw: &RawParams) -> Result<SignOrientation> {
    let eff = derive_effective_params(raw, 0.0)?;
    let single = dressed_single(&eff);
    let reach = single.e_plus.abs().max(single.e_minus.abs()) + 0.25;
    let grid = Grid::new(eff.e_ss - reach, eff.e_ss + reach, (reach / 200.0).min(0.005))?;
    let solo = RawParams { coupling_on_control: false, ..raw.clone() };
    let spectrum = scan_spectrum(&solo, &grid.points(), 0.0)?;
    let peaks = find_peaks(&spectrum, DEFAULT_PROMINENCE_FRACTION)?;
    if peaks.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let cost = |o: SignOrientation| -> Result<f64> {
        let pred = predict_peaks(&eff, 0.0, o)?;
        Ok(pred
            .at_doublet
            .iter()
            .map(|l| peaks.iter().map(|p| (p.detuning - l.detuning).abs()).fold(f64::INFINITY, f64::min))
            .sum())
    };
    Ok(if cost(SignOrientation::Negative)? < cost(SignOrientation::Positive)? {
        SignOrientation::Negative
    } else {
        SignOrientation::Positive
    })
}

/// Imaginary part of the linear susceptibility in the dressed-state
/// approximation, up to a positive prefactor.
pub fn susceptibility_im(eps_p: f64, eps_c: f64, lambda_c: f64, gamma_r: f64) -> f64 {
    let num = (eps_p - eps_c) * eps_c * gamma_r;
    let re = eps_p * (eps_p - eps_c) - lambda_c * lambda_c;
    let im = -0.5 * gamma_r * eps_c;
    num / (re * re + im * im)
}
