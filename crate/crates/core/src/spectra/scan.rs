use serde::{Deserialize, Serialize};

use crate::dynamics::{reachable_steady_state, rydberg_population, steady_state, DensityMatrix, Liouvillian};
use crate::error::{Error, Result};
use crate::model::{
    build_effective_hamiltonian, build_jump_operators, build_single_atom_hamiltonian, build_single_atom_jumps,
    derive_effective_params, Basis, Level, RawParams,
};

/// Grid values are snapped to this lattice so that `min + k * step` is
/// reproducible across platforms and paths.
const GRID_LATTICE: f64 = 1e12;

/// Inclusive uniform grid `min, min + step, ..., <= max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
            return Err(Error::NonUniformGrid);
        }
        Ok(Self { min, max, step })
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, k: usize) -> f64 {
        snap(self.min + k as f64 * self.step)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.point(k)).collect()
    }
}

pub fn snap(x: f64) -> f64 {
    let y = (x * GRID_LATTICE).round() / GRID_LATTICE;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Steady-state Rydberg population of the probe atom along a detuning grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub detunings: Vec<f64>,
    pub populations: Vec<f64>,
    pub params_fingerprint: String,
    pub v: f64,
}

impl Spectrum {
    pub fn new(detunings: Vec<f64>, populations: Vec<f64>, params_fingerprint: String, v: f64) -> Result<Self> {
        if detunings.len() != populations.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} detunings for {} populations",
                detunings.len(),
                populations.len()
            )));
        }
        check_uniform(&detunings)?;
        Ok(Self { detunings, populations, params_fingerprint, v })
    }

    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    pub fn step(&self) -> Option<f64> {
        (self.len() > 1).then(|| self.detunings[1] - self.detunings[0])
    }

    /// Index and value of the largest population.
    pub fn max(&self) -> Option<(usize, f64)> {
        self.populations
            .iter()
            .copied()
            .enumerate()
            .fold(None, |best, (i, y)| match best {
                Some((_, b)) if b >= y => best,
                _ => Some((i, y)),
            })
    }
}

/// Strictly increasing with a constant step (to 1e-9 relative).
pub fn check_uniform(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Ok(());
    }
    let step = x[1] - x[0];
    if !(step > 0.0) {
        return Err(Error::NonUniformGrid);
    }
    let tol = 1e-9 * step.max(x.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
    if x.windows(2).any(|w| ((w[1] - w[0]) - step).abs() > tol) {
        return Err(Error::NonUniformGrid);
    }
    Ok(())
}

/// Steady-state probe-atom Rydberg population at one probe detuning.
///
/// With the coupling beams on the control atom the pair is solved on the
/// levels reachable from `|g_p g_c>`; otherwise the probe atom is solved
/// alone.
pub fn steady_population(raw: &RawParams, delta_p: f64, v: f64) -> Result<f64> {
    let eff = derive_effective_params(raw, delta_p)?;
    let pop = if raw.coupling_on_control {
        let basis = Basis::EFFECTIVE_PAIR;
        let h = build_effective_hamiltonian(&eff, v, true);
        let jumps = build_jump_operators(&eff);
        let start = basis.index(&[Level::Gp, Level::Gc]).expect("start state exists");
        let rho = reachable_steady_state(&h, &jumps, start, Some(basis))?;
        rydberg_population(&rho, 1)?
    } else {
        let h = build_single_atom_hamiltonian(&eff);
        let l = Liouvillian::build(&h, &build_single_atom_jumps(&eff))?;
        let rho: DensityMatrix = steady_state(&l, Some(Basis::EFFECTIVE_SINGLE))?;
        rydberg_population(&rho, 1)?
    };
    Ok(pop.clamp(0.0, 1.0))
}

pub fn scan_spectrum(raw: &RawParams, grid: &[f64], v: f64) -> Result<Spectrum> {
    check_uniform(grid)?;
    let populations = grid.iter().map(|&d| steady_population(raw, d, v)).collect::<Result<Vec<_>>>()?;
    let tag = raw.clone().with_v(v).fingerprint();
    Spectrum::new(grid.to_vec(), populations, tag, v)
}
