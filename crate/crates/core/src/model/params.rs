//! Laboratory parameters and the derived two-photon (Raman) couplings.
//!
//! Every frequency is in cyclic MHz (the value of `X / 2π`); conversion to
//! angular units happens once, when operators enter a master equation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::C64;

/// Ratio `|Ω/Δ|` above which the adiabatic elimination of `|e>` is suspect.
pub const DISPERSIVE_RATIO_LIMIT: f64 = 0.1;

/// Source of the pair interaction energy on `|rr>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interaction {
    /// Interaction energy in cyclic MHz.
    Energy(f64),
    /// `v = -c6 / r_sep^6` with `c6` in MHz·µm⁶ and `r_sep` in µm.
    VanDerWaals { c6: f64, r_sep: f64 },
}

impl Interaction {
    pub fn energy(&self) -> f64 {
        match *self {
            Interaction::Energy(v) => v,
            Interaction::VanDerWaals { c6, r_sep } => -c6 / r_sep.powi(6),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub omega_p1: C64,
    pub omega_p2: C64,
    pub omega_c1: C64,
    pub omega_c2: C64,
    pub delta_p2: f64,
    pub delta_c1: f64,
    pub delta_c2: f64,
    pub gamma_ec: f64,
    pub gamma_ep: f64,
    pub gamma_r: f64,
    pub interaction: Interaction,
    /// `false` removes the coupling beams from the control atom, leaving
    /// two uncorrelated atoms.
    pub coupling_on_control: bool,
}

impl Default for RawParams {
    /// The parameter set used throughout the reference spectra.
    fn default() -> Self {
        Self {
            omega_p1: C64::new(1.0, 0.0),
            omega_p2: C64::new(1.0, 0.0),
            omega_c1: C64::new(20.0, 0.0),
            omega_c2: C64::new(20.0, 0.0),
            delta_p2: 50.0,
            delta_c1: 1000.0,
            delta_c2: 1000.0,
            gamma_ec: 3.0,
            gamma_ep: 3.0,
            gamma_r: 0.1,
            interaction: Interaction::Energy(0.0),
            coupling_on_control: true,
        }
    }
}

impl RawParams {
    /// Coupling two-photon detuning `δ_c = Δ_c1 − Δ_c2`.
    pub fn delta_c(&self) -> f64 {
        self.delta_c1 - self.delta_c2
    }

    /// First probe detuning at two-photon probe detuning `delta_p`.
    pub fn delta_p1(&self, delta_p: f64) -> f64 {
        self.delta_p2 - delta_p
    }

    pub fn v(&self) -> f64 {
        self.interaction.energy()
    }

    pub fn with_v(mut self, v: f64) -> Self {
        self.interaction = Interaction::Energy(v);
        self
    }

    pub fn with_probe(mut self, omega_p: f64) -> Self {
        self.omega_p1 = C64::new(omega_p, 0.0);
        self.omega_p2 = C64::new(omega_p, 0.0);
        self
    }

    pub fn with_gamma_r(mut self, gamma_r: f64) -> Self {
        self.gamma_r = gamma_r;
        self
    }

    /// Checks the hard invariants: finite values, nonzero detunings,
    /// nonnegative decay rates.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.omega_p1.re,
            self.omega_p1.im,
            self.omega_p2.re,
            self.omega_p2.im,
            self.omega_c1.re,
            self.omega_c1.im,
            self.omega_c2.re,
            self.omega_c2.im,
            self.delta_p2,
            self.delta_c1,
            self.delta_c2,
            self.gamma_ec,
            self.gamma_ep,
            self.gamma_r,
            self.v(),
        ];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        for (name, d) in [("delta_p2", self.delta_p2), ("delta_c1", self.delta_c1), ("delta_c2", self.delta_c2)] {
            if d == 0.0 {
                return Err(Error::DivisionByZero(name));
            }
        }
        for (name, g) in [("gamma_ec", self.gamma_ec), ("gamma_ep", self.gamma_ep), ("gamma_r", self.gamma_r)] {
            if g < 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be nonnegative, got {g}")));
            }
        }
        if let Interaction::VanDerWaals { r_sep, .. } = self.interaction {
            if r_sep <= 0.0 {
                return Err(Error::InvalidParams(format!("r_sep must be positive, got {r_sep}")));
            }
        }
        Ok(())
    }

    /// Largest `|Ω_y / Δ_y|` over the four driven transitions, at `δ_p = 0`.
    pub fn dispersive_ratio(&self) -> f64 {
        self.ratios().into_iter().fold(0.0, f64::max)
    }

    /// `Σ_y (Ω_y/Δ_y)²` over the four driven transitions; approximates the
    /// intermediate-state population.
    pub fn dispersive_bound(&self) -> f64 {
        self.ratios().iter().map(|r| r * r).sum()
    }

    fn ratios(&self) -> [f64; 4] {
        [
            self.omega_p1.norm() / self.delta_p1(0.0).abs(),
            self.omega_p2.norm() / self.delta_p2.abs(),
            self.omega_c1.norm() / self.delta_c1.abs(),
            self.omega_c2.norm() / self.delta_c2.abs(),
        ]
    }

    /// Stable hex digest of the parameters, used to tag outputs.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        let words = [
            self.omega_p1.re,
            self.omega_p1.im,
            self.omega_p2.re,
            self.omega_p2.im,
            self.omega_c1.re,
            self.omega_c1.im,
            self.omega_c2.re,
            self.omega_c2.im,
            self.delta_p2,
            self.delta_c1,
            self.delta_c2,
            self.gamma_ec,
            self.gamma_ep,
            self.gamma_r,
            self.v(),
            if self.coupling_on_control { 1.0 } else { 0.0 },
        ];
        for w in words {
            hasher.update(w.to_le_bytes());
        }
        hasher.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Couplings, level shifts and decay rates of the effective Raman model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    pub delta_p: f64,
    pub lambda_p: C64,
    pub lambda_c: C64,
    pub eps_p: f64,
    pub eps_c: f64,
    /// Ground-state shift of the control atom.
    pub eps_c2: f64,
    pub alpha_1: f64,
    pub alpha_2: f64,
    pub beta_p: f64,
    pub beta_c: f64,
    /// Stark offset of the whole spectrum, `β_p − α_1`.
    pub e_ss: f64,
    pub gamma_r1p: f64,
    pub gamma_r1c: f64,
    pub gamma_r2c: f64,
}

pub fn derive_effective_params(raw: &RawParams, delta_p: f64) -> Result<EffectiveParams> {
    raw.validate()?;
    if !delta_p.is_finite() {
        return Err(Error::InvalidParams(format!("probe detuning {delta_p} is not finite")));
    }
    let d_p1 = raw.delta_p1(delta_p);
    if d_p1 == 0.0 {
        return Err(Error::DivisionByZero("delta_p1"));
    }
    let (d_p2, d_c1, d_c2) = (raw.delta_p2, raw.delta_c1, raw.delta_c2);

    let two_photon = |o1: C64, o2: C64, d1: f64, d2: f64| -0.5 * o1.conj() * o2 * (1.0 / d1 + 1.0 / d2);
    let lambda_p = two_photon(raw.omega_p1, raw.omega_p2, d_p1, d_p2);
    let lambda_c = two_photon(raw.omega_c1, raw.omega_c2, d_c1, d_c2);

    let beta_p = -raw.omega_p1.norm_sqr() / d_p1;
    let beta_c = raw.omega_c1.norm_sqr() / d_c1;
    let alpha_2 = raw.omega_c2.norm_sqr() / d_c2;
    let alpha_1 = alpha_2 - raw.omega_p2.norm_sqr() / d_p2;

    let delta_c = raw.delta_c();
    let eps_p = beta_p - (delta_p + alpha_1);
    let eps_c = beta_c - (-delta_c + alpha_1);
    let eps_c2 = beta_c - (-delta_c + alpha_2);

    let total = raw.gamma_ec + raw.gamma_ep + raw.gamma_r;
    let (gamma_r1p, gamma_r1c, gamma_r2c) = if total > 0.0 {
        (
            raw.gamma_ep * raw.gamma_r / total,
            raw.gamma_ec * raw.gamma_r / total,
            (raw.gamma_ec + raw.gamma_ep) * raw.gamma_r / total,
        )
    } else {
        (0.0, 0.0, 0.0)
    };

    Ok(EffectiveParams {
        delta_p,
        lambda_p,
        lambda_c,
        eps_p,
        eps_c,
        eps_c2,
        alpha_1,
        alpha_2,
        beta_p,
        beta_c,
        e_ss: beta_p - alpha_1,
        gamma_r1p,
        gamma_r1c,
        gamma_r2c,
    })
}
