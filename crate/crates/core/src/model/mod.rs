//! Laboratory parameters, product bases, Hamiltonians and decay channels.

mod basis;
mod hamiltonian;
mod jumps;
mod params;

pub use basis::{Basis, Level, LevelScheme};
pub use hamiltonian::{
    atom_projector, build_coupling_channel_hamiltonian, build_effective_hamiltonian, build_full_hamiltonian,
    build_single_atom_hamiltonian, FullHamiltonian,
};
pub use jumps::{atom_transition, build_full_jump_operators, build_jump_operators, build_single_atom_jumps, Jump};
pub use params::{derive_effective_params, EffectiveParams, Interaction, RawParams, DISPERSIVE_RATIO_LIMIT};
