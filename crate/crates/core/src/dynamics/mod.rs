//! Lindblad generators, steady states and time evolution.

mod density;
mod evolve;
mod liouvillian;
mod steady;

pub use density::{
    hermitian_part, level_population, rydberg_population, DensityMatrix, Tolerances, HERMITIAN_TOL, POSITIVITY_TOL,
    TRACE_TOL,
};
pub use evolve::{evolve, evolve_time_dependent, Trajectory, TRAJECTORY_TRACE_TOL};
pub use liouvillian::{Liouvillian, TRACE_PRESERVATION_TOL};
pub use steady::{reachable_steady_state, steady_state, steady_state_residual, Subspace, RANK_TOL};
