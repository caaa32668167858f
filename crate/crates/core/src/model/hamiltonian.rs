//! Hamiltonians of the effective Raman model (cyclic MHz) and of the full
//! four-level pair (angular rad/µs, explicitly time dependent).

use std::f64::consts::TAU;

use super::basis::{Basis, Level, LevelScheme};
use super::params::{EffectiveParams, RawParams};
use crate::numerics::{kron, ComplexMatrix, SparseMatrix, C64};

fn effective_index(level: Level) -> usize {
    LevelScheme::Effective.index(level).expect("level exists in the effective scheme")
}

fn full_index(level: Level) -> usize {
    LevelScheme::Full.index(level).expect("level exists in the full scheme")
}

/// Atom-1 block `ε_p|g_p><g_p| + ε_c|g_c><g_c| + (λ_p|r><g_p| + λ_c|r><g_c| + h.c.)`.
pub fn build_single_atom_hamiltonian(eff: &EffectiveParams) -> ComplexMatrix {
    let (gp, gc, r) = (effective_index(Level::Gp), effective_index(Level::Gc), effective_index(Level::R));
    let mut h = ComplexMatrix::zeros(3, 3);
    h[(gp, gp)] = C64::new(eff.eps_p, 0.0);
    h[(gc, gc)] = C64::new(eff.eps_c, 0.0);
    h[(r, gp)] = eff.lambda_p;
    h[(gp, r)] = eff.lambda_p.conj();
    h[(r, gc)] = eff.lambda_c;
    h[(gc, r)] = eff.lambda_c.conj();
    h
}

/// Control-atom block `ε'_c|g_c><g_c| + (λ_c|r><g_c| + h.c.)`.
fn control_atom_hamiltonian(eff: &EffectiveParams) -> ComplexMatrix {
    let (gc, r) = (effective_index(Level::Gc), effective_index(Level::R));
    let mut h = ComplexMatrix::zeros(3, 3);
    h[(gc, gc)] = C64::new(eff.eps_c2, 0.0);
    h[(r, gc)] = eff.lambda_c;
    h[(gc, r)] = eff.lambda_c.conj();
    h
}

/// Two-atom effective Hamiltonian on the 9-dimensional product basis. With
/// `coupling_on_control` false the control atom is left undriven and the
/// interaction is dropped.
pub fn build_effective_hamiltonian(eff: &EffectiveParams, v: f64, coupling_on_control: bool) -> ComplexMatrix {
    let id = ComplexMatrix::identity(3);
    let mut h = kron(&build_single_atom_hamiltonian(eff), &id);
    if coupling_on_control {
        h += &kron(&id, &control_atom_hamiltonian(eff));
        let rr = Basis::EFFECTIVE_PAIR.index(&[Level::R, Level::R]).expect("rr exists");
        h[(rr, rr)] += C64::new(v, 0.0);
    }
    h
}

/// Coupling-channel Hamiltonian on `{g_c g_c, g_c r, r g_c, r r}`.
pub fn build_coupling_channel_hamiltonian(eff: &EffectiveParams, v: f64) -> ComplexMatrix {
    let lc = eff.lambda_c;
    let mut h = ComplexMatrix::real_diagonal(&[eff.eps_c + eff.eps_c2, eff.eps_c, eff.eps_c2, v]);
    // Atom 1 raises g_c to r on states 0->2 and 1->3, atom 2 on 0->1 and 2->3.
    for (to, from) in [(2, 0), (3, 1), (1, 0), (3, 2)] {
        h[(to, from)] = lc;
        h[(from, to)] = lc.conj();
    }
    h
}

/// One driven term `amplitude * e^{-i freq t} |row><col|` (plus its adjoint).
#[derive(Debug, Clone, Copy)]
struct DriveTerm {
    row: usize,
    col: usize,
    amplitude: C64,
    freq: f64,
}

/// Time-dependent Hamiltonian of the full two-atom four-level system in
/// angular units (rad/µs) on the 16-dimensional product basis.
#[derive(Debug, Clone)]
pub struct FullHamiltonian {
    terms: Vec<DriveTerm>,
    rr: usize,
    v: f64,
}

impl FullHamiltonian {
    pub fn new(raw: &RawParams, delta_p: f64) -> Self {
        let d = LevelScheme::Full.dim();
        let (gp, gc, e, r) = (full_index(Level::Gp), full_index(Level::Gc), full_index(Level::E), full_index(Level::R));
        let w = |z: C64| z * TAU;
        let mut single: Vec<(usize, usize, usize, C64, f64)> = Vec::new();
        let driven_atoms: &[usize] = if raw.coupling_on_control { &[1, 2] } else { &[1] };
        for &atom in driven_atoms {
            single.push((atom, e, gc, w(raw.omega_c1), TAU * raw.delta_c1));
            single.push((atom, e, r, w(raw.omega_c2.conj()), TAU * raw.delta_c2));
        }
        single.push((1, gp, e, w(raw.omega_p1.conj()), TAU * raw.delta_p1(delta_p)));
        single.push((1, r, e, w(raw.omega_p2), TAU * raw.delta_p2));

        let mut terms = Vec::new();
        for (atom, a, b, amplitude, freq) in single {
            for k in 0..d {
                let (row, col) = if atom == 1 { (d * a + k, d * b + k) } else { (d * k + a, d * k + b) };
                terms.push(DriveTerm { row, col, amplitude, freq });
            }
        }
        let rr = Basis::FULL_PAIR.index(&[Level::R, Level::R]).expect("rr exists");
        Self { terms, rr, v: TAU * raw.v() }
    }

    pub fn dim(&self) -> usize {
        Basis::FULL_PAIR.dim()
    }

    /// Overwrites `out` with the nonzero entries of `H(t)`.
    pub fn fill_sparse(&self, t: f64, out: &mut SparseMatrix) {
        out.clear();
        for term in &self.terms {
            let z = term.amplitude * C64::from_polar(1.0, -term.freq * t);
            out.push(term.row, term.col, z);
            out.push(term.col, term.row, z.conj());
        }
        out.push(self.rr, self.rr, C64::new(self.v, 0.0));
    }

    pub fn at(&self, t: f64) -> ComplexMatrix {
        let mut s = SparseMatrix::new(self.dim());
        self.fill_sparse(t, &mut s);
        s.to_dense()
    }
}

/// Dense `H(t)` of the full model in angular units.
pub fn build_full_hamiltonian(raw: &RawParams, delta_p: f64, t: f64) -> ComplexMatrix {
    FullHamiltonian::new(raw, delta_p).at(t)
}

/// `|x><x|` of one atom embedded in the pair space of `basis`.
pub fn atom_projector(basis: Basis, atom: usize, level: Level) -> ComplexMatrix {
    let n = basis.dim();
    let mut p = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        if basis.level_of(i, atom) == level {
            p[(i, i)] = C64::new(1.0, 0.0);
        }
    }
    p
}
