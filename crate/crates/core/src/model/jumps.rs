use super::basis::{Basis, Level};
use super::params::{EffectiveParams, RawParams};
use crate::numerics::{kron, ComplexMatrix};

/// Lindblad channel `rate * D[operator]`, rate in cyclic MHz.
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    pub operator: ComplexMatrix,
    pub rate: f64,
}

/// `|to><from|` acting on `atom` in the product space of `basis`.
pub fn atom_transition(basis: Basis, atom: usize, to: Level, from: Level) -> ComplexMatrix {
    let d = basis.single_dim();
    let a = basis.scheme.index(to).expect("level in scheme");
    let b = basis.scheme.index(from).expect("level in scheme");
    let local = ComplexMatrix::ket_bra(d, a, b);
    let id = ComplexMatrix::identity(d);
    match (basis.atoms, atom) {
        (1, 1) => local,
        (2, 1) => kron(&local, &id),
        (2, 2) => kron(&id, &local),
        _ => panic!("atom {atom} out of range for a {}-atom basis", basis.atoms),
    }
}

fn push_nonzero(jumps: &mut Vec<Jump>, operator: ComplexMatrix, rate: f64) {
    if rate > 0.0 {
        jumps.push(Jump { operator, rate });
    }
}

/// Effective Rydberg decay channels of the pair: atom 1 to `g_p` and `g_c`,
/// atom 2 to `g_c`. Zero-rate channels are omitted.
pub fn build_jump_operators(eff: &EffectiveParams) -> Vec<Jump> {
    let b = Basis::EFFECTIVE_PAIR;
    let mut jumps = Vec::with_capacity(3);
    push_nonzero(&mut jumps, atom_transition(b, 1, Level::Gp, Level::R), eff.gamma_r1p);
    push_nonzero(&mut jumps, atom_transition(b, 1, Level::Gc, Level::R), eff.gamma_r1c);
    push_nonzero(&mut jumps, atom_transition(b, 2, Level::Gc, Level::R), eff.gamma_r2c);
    jumps
}

/// Decay channels of the probe atom alone.
pub fn build_single_atom_jumps(eff: &EffectiveParams) -> Vec<Jump> {
    let b = Basis::EFFECTIVE_SINGLE;
    let mut jumps = Vec::with_capacity(2);
    push_nonzero(&mut jumps, atom_transition(b, 1, Level::Gp, Level::R), eff.gamma_r1p);
    push_nonzero(&mut jumps, atom_transition(b, 1, Level::Gc, Level::R), eff.gamma_r1c);
    jumps
}

/// Bare decay channels of the four-level pair: `r -> e`, `e -> g_c` and
/// `e -> g_p` on each atom. The control atom has no probe field to return
/// it from `g_p`, so its `e -> g_p` branch is routed to `g_c`, matching the
/// single effective channel of the control atom.
pub fn build_full_jump_operators(raw: &RawParams) -> Vec<Jump> {
    let b = Basis::FULL_PAIR;
    let mut jumps = Vec::with_capacity(6);
    for atom in [1, 2] {
        let ep_target = if atom == 1 { Level::Gp } else { Level::Gc };
        push_nonzero(&mut jumps, atom_transition(b, atom, Level::E, Level::R), raw.gamma_r);
        push_nonzero(&mut jumps, atom_transition(b, atom, Level::Gc, Level::E), raw.gamma_ec);
        push_nonzero(&mut jumps, atom_transition(b, atom, ep_target, Level::E), raw.gamma_ep);
    }
    jumps
}
