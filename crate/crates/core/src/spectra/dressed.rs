//! Dressed states of the coupling field: one atom, and the pair coupled
//! through `|rr>`.

use serde::Serialize;

use crate::error::Result;
use crate::model::{build_coupling_channel_hamiltonian, EffectiveParams};
use crate::numerics::{eig_hermitian, ComplexMatrix, C64, ONE, ZERO};

/// Dressed states of `{g_c, r}` under the coupling field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DressedSingle {
    pub e_plus: f64,
    pub e_minus: f64,
    /// Half the Autler-Townes splitting.
    pub varpi: f64,
    /// Amplitudes on `(g_c, r)` of the `+` and `-` states.
    pub states: [[C64; 2]; 2],
}

pub fn dressed_single(eff: &EffectiveParams) -> DressedSingle {
    let varpi = (eff.eps_c * eff.eps_c / 4.0 + eff.lambda_c.norm_sqr()).sqrt();
    let e_plus = eff.eps_c / 2.0 + varpi;
    let e_minus = eff.eps_c / 2.0 - varpi;
    let state = |e: f64, fallback: [C64; 2]| {
        let a = [C64::new(e, 0.0), eff.lambda_c];
        let norm = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
        if norm == 0.0 {
            fallback
        } else {
            [a[0] / norm, a[1] / norm]
        }
    };
    DressedSingle {
        e_plus,
        e_minus,
        varpi,
        states: [state(e_plus, [ONE, ZERO]), state(e_minus, [ZERO, ONE])],
    }
}

/// Collective dressed states of the coupling channel
/// `{g_c g_c, g_c r, r g_c, r r}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DressedPair {
    /// Ascending.
    pub energies: [f64; 4],
    /// `amplitudes[(n, j)]` is the weight of basis state `n` in dressed state `j`.
    pub amplitudes: ComplexMatrix,
    /// Interaction shift `|η_{rr,j}|² v` of each dressed state.
    pub vdw_shifts: [f64; 4],
}

const RR: usize = 3;

/// Relative spacing below which eigenvalues are treated as one cluster.
const DEGENERACY_TOL: f64 = 1e-9;

pub fn dressed_pair(eff: &EffectiveParams, v: f64) -> Result<DressedPair> {
    let h = build_coupling_channel_hamiltonian(eff, v);
    let eig = eig_hermitian(&h)?;
    let mut vectors = eig.vectors.clone();
    let scale = h.max_abs().max(1.0);

    // Inside a degenerate cluster pick the basis that diagonalizes the
    // `|rr>` projector, i.e. the states that stay eigenstates once the
    // interaction is switched on.
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && eig.values[end] - eig.values[start] <= DEGENERACY_TOL * scale {
            end += 1;
        }
        if end - start > 1 {
            let cols: Vec<Vec<C64>> = (start..end).map(|j| vectors.column(j)).collect();
            let k = cols.len();
            let proj = ComplexMatrix::from_fn(k, k, |a, b| cols[a][RR].conj() * cols[b][RR]);
            let inner = eig_hermitian(&proj)?;
            for (jj, j) in (start..end).enumerate() {
                let mut mixed = vec![ZERO; 4];
                for (a, col) in cols.iter().enumerate() {
                    let w = inner.vectors[(a, jj)];
                    for n in 0..4 {
                        mixed[n] += w * col[n];
                    }
                }
                fix_phase(&mut mixed);
                for n in 0..4 {
                    vectors[(n, j)] = mixed[n];
                }
            }
        }
        start = end;
    }

    let energies = [eig.values[0], eig.values[1], eig.values[2], eig.values[3]];
    let vdw_shifts = std::array::from_fn(|j| vectors[(RR, j)].norm_sqr() * v);
    Ok(DressedPair { energies, amplitudes: vectors, vdw_shifts })
}

fn fix_phase(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let max = v.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let Some(pivot) = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-10)) else {
        return;
    };
    if norm == 0.0 {
        return;
    }
    let rot = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z = *z * rot / norm;
    }
    v[pivot] = C64::new(v[pivot].re, 0.0);
}

impl DressedPair {
    /// Index of the antisymmetric dark state `(|g_c r> - |r g_c>)/√2`, if
    /// one of the dressed states has no weight on `|g_c g_c>` and `|rr>`.
    pub fn dark_state(&self, tol: f64) -> Option<usize> {
        (0..4).find(|&j| self.amplitudes[(0, j)].norm() <= tol && self.amplitudes[(RR, j)].norm() <= tol)
    }
}
